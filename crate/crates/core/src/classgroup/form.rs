//! Reduced binary quadratic forms and Gauss composition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ClassGroupError;

/// A negative discriminant, `delta < 0` and `delta = 0 or 1 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Discriminant {
    delta: BigInt,
}

impl Discriminant {
    pub fn new(delta: BigInt) -> Result<Self, ClassGroupError> {
        let rem = delta.mod_floor(&BigInt::from(4));
        if delta >= BigInt::zero() || (!rem.is_zero() && !rem.is_one()) {
            return Err(ClassGroupError::InvalidDiscriminant(delta));
        }
        Ok(Discriminant { delta })
    }

    /// The CSIDH-shaped discriminant `-4p`.
    pub fn minus_four_p(p: &BigInt) -> Result<Self, ClassGroupError> {
        Self::new(BigInt::from(-4) * p)
    }

    pub fn value(&self) -> &BigInt {
        &self.delta
    }

    pub fn abs(&self) -> BigInt {
        -&self.delta
    }

    /// Natural log of |delta|, used by the oracle's parameter formulas.
    pub fn ln_abs(&self) -> f64 {
        // |delta| can exceed f64 range only far beyond desk scale; a direct
        // conversion is fine here.
        bigint_to_f64(&self.abs()).ln()
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.delta)
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::MAX)
}

/// A reduced primitive positive definite form `(a, b, c)` with
/// `b^2 - 4ac = delta`. Reduced means `|b| <= a <= c` and `b >= 0`
/// whenever `|b| = a` or `a = c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Outcome of [`QuadForm::prime_form`]: either the reduced class of a prime
/// form of norm `p`, or evidence that `p` does not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitResult {
    Split(QuadForm),
    NotSplit,
}

impl QuadForm {
    /// Build a form from raw coefficients, checking primitivity and the
    /// discriminant, and reduce it.
    pub fn new(
        a: BigInt,
        b: BigInt,
        c: BigInt,
        disc: &Discriminant,
    ) -> Result<Self, ClassGroupError> {
        let found = &b * &b - BigInt::from(4) * &a * &c;
        if &found != disc.value() {
            return Err(ClassGroupError::DiscriminantMismatch {
                a,
                b,
                c,
                found,
                expected: disc.value().clone(),
            });
        }
        if a.is_negative() || a.is_zero() {
            return Err(ClassGroupError::NotPrimitive(a, b, c));
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            return Err(ClassGroupError::NotPrimitive(a, b, c));
        }
        Ok(QuadForm { a, b, c }.reduced())
    }

    /// The principal (identity) form of the given discriminant.
    pub fn identity(disc: &Discriminant) -> Self {
        let delta = disc.value();
        let b = delta.mod_floor(&BigInt::from(2));
        let c = (&b * &b - delta) / BigInt::from(4);
        QuadForm {
            a: BigInt::one(),
            b,
            c,
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant_value(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one()
    }

    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        if ab > self.a || self.a > self.c {
            return false;
        }
        if (ab == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// Normalize: bring `b` into `(-a, a]`, fixing `c` to keep the
    /// discriminant.
    fn normalize(&mut self) {
        // r = b - 2a*round, with r in (-a, a]
        let two_a = BigInt::from(2) * &self.a;
        let mut r = self.b.mod_floor(&two_a);
        if r > self.a {
            r -= &two_a;
        }
        if r != self.b {
            let delta = &self.b * &self.b - BigInt::from(4) * &self.a * &self.c;
            self.b = r;
            self.c = (&self.b * &self.b - delta) / (BigInt::from(4) * &self.a);
        }
    }

    /// Gauss reduction. Idempotent on reduced forms.
    pub fn reduced(mut self) -> Self {
        self.normalize();
        while self.a > self.c {
            // rho step: (a, b, c) -> (c, -b, a), then renormalize
            std::mem::swap(&mut self.a, &mut self.c);
            self.b = -&self.b;
            self.normalize();
        }
        if self.a == self.c && self.b.is_negative() {
            self.b = -&self.b;
        }
        self
    }

    /// The class inverse `(a, -b, c)`, reduced.
    pub fn inverse(&self) -> Self {
        QuadForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
        .reduced()
    }

    /// Gauss composition of two forms of the same discriminant; the result
    /// is reduced. This is the group law of the class group.
    pub fn compose(&self, other: &QuadForm) -> Result<Self, ClassGroupError> {
        let delta = self.discriminant_value();
        if delta != other.discriminant_value() {
            return Err(ClassGroupError::DiscriminantMismatch {
                a: other.a.clone(),
                b: other.b.clone(),
                c: other.c.clone(),
                found: other.discriminant_value(),
                expected: delta,
            });
        }
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2, c2) = (&other.a, &other.b, &other.c);

        // s = (b1+b2)/2; g = u*a1 + v*a2 + w*s
        let s: BigInt = (b1 + b2) / 2;
        let n: BigInt = (b1 - b2) / 2;
        let (g, _u, v, w) = ext_gcd3(a1, a2, &s);

        let a3: BigInt = (a1 * a2) / (&g * &g);
        // B = b2 + (2*a2/g) * (v*n - w*c2)  (mod 2*a3)
        let inner = &v * &n - &w * c2;
        let b_raw: BigInt = b2 + (BigInt::from(2) * a2 / &g) * inner;
        let two_a3 = BigInt::from(2) * &a3;
        let b3 = b_raw.mod_floor(&two_a3);

        let num = &b3 * &b3 - &delta;
        debug_assert!((&num % (BigInt::from(4) * &a3)).is_zero());
        let c3 = num / (BigInt::from(4) * &a3);
        Ok(QuadForm {
            a: a3,
            b: b3,
            c: c3,
        }
        .reduced())
    }

    /// `self^e` by square-and-multiply; negative exponents go through the
    /// inverse, `e = 0` gives the identity.
    pub fn pow(&self, e: &BigInt) -> Self {
        let disc = Discriminant {
            delta: self.discriminant_value(),
        };
        if e.is_zero() {
            return QuadForm::identity(&disc);
        }
        let base = if e.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let mut exp = e.abs();
        let mut result = QuadForm::identity(&disc);
        let mut sq = base;
        while !exp.is_zero() {
            if exp.is_odd() {
                result = result.compose(&sq).expect("same discriminant");
            }
            exp >>= 1;
            if !exp.is_zero() {
                sq = sq.compose(&sq).expect("same discriminant");
            }
        }
        result
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        self.pow(&BigInt::from(e))
    }

    /// The reduced class of a prime form of norm `p`, when `p` splits.
    ///
    /// For split `p` the form is `(p, b, c)` with `b` the smallest positive
    /// solution of `b^2 = delta (mod 4p)`. Ramified primes (`p | delta`) are
    /// an error; inert primes yield [`SplitResult::NotSplit`].
    pub fn prime_form(disc: &Discriminant, p: u64) -> Result<SplitResult, ClassGroupError> {
        let delta = disc.value();
        if p == 2 {
            // 2 splits iff delta = 1 (mod 8); even discriminants ramify.
            if delta.is_even() {
                return Err(ClassGroupError::Ramified(2));
            }
            let m8 = delta.mod_floor(&BigInt::from(8));
            if m8.is_one() {
                let c = (BigInt::one() - delta) / BigInt::from(8);
                return Ok(SplitResult::Split(
                    QuadForm {
                        a: BigInt::from(2),
                        b: BigInt::one(),
                        c,
                    }
                    .reduced(),
                ));
            }
            return Ok(SplitResult::NotSplit);
        }
        let pb = BigInt::from(p);
        let dm = delta.mod_floor(&pb);
        if dm.is_zero() {
            return Err(ClassGroupError::Ramified(p));
        }
        match kronecker_symbol(delta, &pb) {
            0 => Err(ClassGroupError::Ramified(p)),
            -1 => Ok(SplitResult::NotSplit),
            _ => {
                let root = sqrt_mod_prime(&dm, p).ok_or_else(|| {
                    ClassGroupError::Internal(format!("sqrt mod {p} failed for residue"))
                })?;
                // b must satisfy b = +-root (mod p) and b = delta (mod 2) so
                // that b^2 = delta (mod 4p); take the smallest positive such b.
                let want_even = delta.is_even();
                let best = [root, p - root, root + p, 2 * p - root]
                    .into_iter()
                    .filter(|&b| b > 0 && (b % 2 == 0) == want_even)
                    .min()
                    .expect("one of the four lifts has the right parity");
                let best = BigInt::from(best);
                debug_assert!(
                    ((&best * &best - delta) % (BigInt::from(4) * &pb)).is_zero(),
                    "root lift failed"
                );
                let c = (&best * &best - delta) / (BigInt::from(4) * &pb);
                let form = QuadForm {
                    a: pb,
                    b: best,
                    c,
                };
                let g = form.a.gcd(&form.b).gcd(&form.c);
                if !g.is_one() {
                    // non-invertible at a prime dividing the conductor
                    return Err(ClassGroupError::Ramified(p));
                }
                Ok(SplitResult::Split(form.reduced()))
            }
        }
    }

    /// Canonical text form `a,b,c@delta`.
    pub fn to_canonical_string(&self) -> String {
        format!("{},{},{}@{}", self.a, self.b, self.c, self.discriminant_value())
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl FromStr for QuadForm {
    type Err = ClassGroupError;

    /// Parse the canonical text form `a,b,c@delta`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (coeffs, disc) = s
            .split_once('@')
            .ok_or_else(|| ClassGroupError::Parse(format!("missing '@' in {s:?}")))?;
        let parts: Vec<&str> = coeffs.split(',').collect();
        if parts.len() != 3 {
            return Err(ClassGroupError::Parse(format!(
                "expected a,b,c@delta, got {s:?}"
            )));
        }
        let parse = |t: &str| {
            BigInt::from_str(t.trim())
                .map_err(|e| ClassGroupError::Parse(format!("bad integer {t:?}: {e}")))
        };
        let a = parse(parts[0])?;
        let b = parse(parts[1])?;
        let c = parse(parts[2])?;
        let delta = Discriminant::new(parse(disc)?)?;
        QuadForm::new(a, b, c, &delta)
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = x*a + y*b`, `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
        let tmp = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, tmp);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Three-term extended gcd: `(g, u, v, w)` with `g = u*a + v*b + w*c`.
fn ext_gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let (g1, x1, y1) = ext_gcd(a, b);
    let (g, x2, y2) = ext_gcd(&g1, c);
    (g, &x2 * x1, &x2 * y1, y2)
}

/// Kronecker symbol (a/n) for odd prime or general n > 0.
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> i32 {
    // Specialized to odd positive n (all callers pass odd primes).
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let m8 = n.mod_floor(&BigInt::from(8));
            if m8 == BigInt::from(3) || m8 == BigInt::from(5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4)) == BigInt::from(3)
            && n.mod_floor(&BigInt::from(4)) == BigInt::from(3)
        {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks), if one exists.
fn sqrt_mod_prime(a: &BigInt, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return Some(0);
    }
    if kronecker_symbol(&a, &pb) != 1 {
        return None;
    }
    if p % 4 == 3 {
        let e = (&pb + 1u32) / 4u32;
        let r = a.modpow(&e, &pb);
        return r.try_into().ok();
    }
    // Tonelli-Shanks for p = 1 (mod 4)
    let mut q = &pb - 1u32;
    let mut s = 0u32;
    while q.is_even() {
        q /= 2;
        s += 1;
    }
    // find a non-residue
    let mut z = BigInt::from(2);
    while kronecker_symbol(&z, &pb) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, &pb);
    let mut t = a.modpow(&q, &pb);
    let mut r = a.modpow(&((&q + 1u32) / 2u32), &pb);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(&pb);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&BigInt::from(2u32).pow(m - i - 1), &pb);
        m = i;
        c = (&b * &b).mod_floor(&pb);
        t = (&t * &c).mod_floor(&pb);
        r = (&r * &b).mod_floor(&pb);
    }
    r.try_into().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(BigInt::from(d)).unwrap()
    }

    fn form(a: i64, b: i64, c: i64, d: i64) -> QuadForm {
        QuadForm::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), &disc(d)).unwrap()
    }

    /// Brute-force reduction oracle: walk all rho/translation neighbours of
    /// the orbit until the unique reduced representative is found.
    fn reduce_oracle(a: i64, b: i64, c: i64) -> (i64, i64, i64) {
        let (mut a, mut b, mut c) = (a, b, c);
        loop {
            // normalize b into (-a, a]
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            if r != b {
                let delta = b * b - 4 * a * c;
                b = r;
                c = (b * b - delta) / (4 * a);
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
            } else {
                break;
            }
        }
        if (b.abs() == a || a == c) && b < 0 {
            b = -b;
        }
        (a, b, c)
    }

    #[test]
    fn reduce_examples_disc_minus_23() {
        // already reduced identity class
        let f = form(1, 1, 6, -23);
        assert_eq!((f.a(), f.b(), f.c()), (&1.into(), &1.into(), &6.into()));

        // (3,1,2) reduces to (2,-1,3); oracle agrees
        assert_eq!(reduce_oracle(3, 1, 2), (2, -1, 3));
        let f = form(3, 1, 2, -23);
        assert_eq!(f, form(2, -1, 3, -23));

        // (6,5,2): the reduction orbit lands on (2,-1,3)
        assert_eq!(reduce_oracle(6, 5, 2), (2, -1, 3));
        let f = form(6, 5, 2, -23);
        assert_eq!(f, form(2, -1, 3, -23));
    }

    #[test]
    fn reduce_is_idempotent() {
        let f = form(2, 1, 3, -23);
        assert!(f.is_reduced());
        assert_eq!(f.clone().reduced(), f);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        // non-primitive
        assert!(QuadForm::new(
            BigInt::from(2),
            BigInt::from(2),
            BigInt::from(210),
            &disc(-1676)
        )
        .is_err());
        // wrong discriminant
        assert!(QuadForm::new(BigInt::from(1), BigInt::from(1), BigInt::from(6), &disc(-4)).is_err());
    }

    #[test]
    fn compose_identity_and_inverse_laws() {
        let d = disc(-23);
        let id = QuadForm::identity(&d);
        let g = form(2, 1, 3, -23);
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
        assert_eq!(g.compose(&g.inverse()).unwrap(), id);
    }

    #[test]
    fn compose_square_matches_bruteforce() {
        // (2,1,3)^2 over delta=-23: class group has order 3, so the square
        // is the inverse.
        let g = form(2, 1, 3, -23);
        let sq = g.compose(&g).unwrap();
        assert_eq!(sq, form(2, -1, 3, -23));
    }

    #[test]
    fn pow_examples() {
        let g = form(2, 1, 3, -23);
        let id = QuadForm::identity(&disc(-23));
        assert_eq!(g.pow(&BigInt::zero()), id);
        assert_eq!(g.pow(&BigInt::from(3)), id);
        assert_eq!(g.pow(&BigInt::from(-1)), g.inverse());
        assert_eq!(g.pow(&BigInt::from(2)), g.compose(&g).unwrap());
    }

    #[test]
    fn inverse_example() {
        let g = form(2, 1, 3, -23);
        assert_eq!(g.inverse(), form(2, -1, 3, -23));
    }

    #[test]
    fn prime_form_examples() {
        let d23 = disc(-23);
        match QuadForm::prime_form(&d23, 2).unwrap() {
            SplitResult::Split(f) => assert_eq!(f, form(2, 1, 3, -23)),
            SplitResult::NotSplit => panic!("2 splits in Q(sqrt(-23))"),
        }
        // -23 is a non-residue mod 5 (squares mod 5 are 0,1,4; -23 = 2 mod 5)
        assert_eq!(
            QuadForm::prime_form(&d23, 5).unwrap(),
            SplitResult::NotSplit
        );
        let d = disc(-1676);
        match QuadForm::prime_form(&d, 3).unwrap() {
            SplitResult::Split(f) => {
                assert_eq!(f.a(), &BigInt::from(3));
                assert_eq!(f.discriminant_value(), BigInt::from(-1676));
            }
            SplitResult::NotSplit => panic!("3 splits for delta=-4*419"),
        }
        // ramified prime
        assert!(matches!(
            QuadForm::prime_form(&disc(-23 * 4), 23),
            Err(ClassGroupError::Ramified(23))
        ));
        assert!(matches!(
            QuadForm::prime_form(&d, 2),
            Err(ClassGroupError::Ramified(2))
        ));
    }

    #[test]
    fn prime_form_norm_is_p_before_reduction() {
        // the square of a split prime class equals the class composed with itself
        let d = disc(-1676);
        if let SplitResult::Split(f) = QuadForm::prime_form(&d, 3).unwrap() {
            let sq = f.compose(&f).unwrap();
            assert_eq!(sq, f.pow(&BigInt::from(2)));
        }
    }

    #[test]
    fn canonical_string_round_trip() {
        let f = form(2, 1, 3, -23);
        let s = f.to_canonical_string();
        assert_eq!(s, "2,1,3@-23");
        let parsed: QuadForm = s.parse().unwrap();
        assert_eq!(parsed, f);
    }

    #[test]
    fn kronecker_basic() {
        assert_eq!(kronecker_symbol(&BigInt::from(-23), &BigInt::from(2)), 1);
        assert_eq!(kronecker_symbol(&BigInt::from(2), &BigInt::from(7)), 1);
        assert_eq!(kronecker_symbol(&BigInt::from(3), &BigInt::from(7)), -1);
        assert_eq!(kronecker_symbol(&BigInt::from(7), &BigInt::from(7)), 0);
    }
}
