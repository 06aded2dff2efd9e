//! Kannan/Fincke-Pohst style enumeration: exact shortest vectors in small
//! dimension, and shortest vectors of projected blocks for the blockwise
//! reducer.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::reduction::{gso, Gso};
use super::{IntMatrix, LatticeError};

const ENUM_DIM_CAP: usize = 12;

/// Exact shortest nonzero vector of the row lattice, with its squared
/// norm. Dimension is capped; this is a test oracle, not a production
/// reducer.
pub fn shortest_vector_enum(basis: &IntMatrix) -> Result<(Vec<BigInt>, BigInt), LatticeError> {
    let n = basis.rows();
    if n > ENUM_DIM_CAP {
        return Err(LatticeError::DimensionCap(n, ENUM_DIM_CAP));
    }
    // LLL first so the enumeration radius starts tight.
    let b = super::reduction::lll_reduce(basis);
    let g = gso(&b);
    let mu: Vec<Vec<f64>> = g
        .mu
        .iter()
        .map(|row| row.iter().map(rat_to_f64).collect())
        .collect();
    let norms: Vec<f64> = g.bstar_norm2.iter().map(rat_to_f64).collect();

    let first_norm2 = row_norm2(&b, 0);
    let mut best_coeffs: Vec<i64> = std::iter::once(1)
        .chain(std::iter::repeat(0))
        .take(n)
        .collect();
    let mut best_exact = first_norm2;
    let mut radius = bigint_to_f64(&best_exact) * (1.0 + 1e-9);

    // Depth-first enumeration over coefficient vectors (x_{n-1},...,x_0).
    let mut x = vec![0i64; n];
    enumerate(
        &b,
        &mu,
        &norms,
        n,
        n - 1,
        &mut x,
        0.0,
        &mut radius,
        &mut best_coeffs,
        &mut best_exact,
    );

    let vec = combination(&b, &best_coeffs);
    Ok((vec, best_exact))
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    b: &IntMatrix,
    mu: &[Vec<f64>],
    norms: &[f64],
    n: usize,
    level: usize,
    x: &mut Vec<i64>,
    partial: f64,
    radius: &mut f64,
    best_coeffs: &mut Vec<i64>,
    best_exact: &mut BigInt,
) {
    // center of the admissible interval for x[level]
    let center: f64 = -(level + 1..n)
        .map(|j| x[j] as f64 * mu[j][level])
        .sum::<f64>();
    if norms[level] <= 0.0 {
        return;
    }
    let half_width = ((*radius - partial).max(0.0) / norms[level]).sqrt();
    let lo = (center - half_width).floor() as i64;
    let hi = (center + half_width).ceil() as i64;
    for xi in lo..=hi {
        x[level] = xi;
        let d = xi as f64 - center;
        let contrib = partial + d * d * norms[level];
        if contrib > *radius {
            continue;
        }
        if level == 0 {
            if x.iter().all(|&v| v == 0) {
                continue;
            }
            let v = combination(b, x);
            let exact: BigInt = v.iter().map(|t| t * t).sum();
            if exact.is_zero() {
                continue;
            }
            if exact < *best_exact {
                *best_exact = exact.clone();
                *best_coeffs = x.clone();
                *radius = bigint_to_f64(&exact) * (1.0 + 1e-9);
            }
        } else {
            enumerate(
                b,
                mu,
                norms,
                n,
                level - 1,
                x,
                contrib,
                radius,
                best_coeffs,
                best_exact,
            );
        }
    }
    x[level] = 0;
}

/// Shortest vector of the block lattice projected orthogonally to the first
/// `i` basis vectors; returns block coefficients when the projected length
/// strictly beats `b*_i`, i.e. an insertion would improve the basis.
pub(crate) fn shortest_in_projected_block(
    b: &IntMatrix,
    g: &Gso,
    i: usize,
    j: usize,
) -> Option<Vec<BigInt>> {
    let dim = j - i;
    if dim < 2 {
        return None;
    }
    let mu: Vec<Vec<f64>> = g
        .mu
        .iter()
        .map(|row| row.iter().map(rat_to_f64).collect())
        .collect();
    let norms: Vec<f64> = g.bstar_norm2.iter().map(rat_to_f64).collect();
    let target = norms[i] * (1.0 - 1e-9);
    let mut best: Option<(Vec<i64>, f64)> = None;

    // enumerate x_{j-1},...,x_i; projected norm^2 =
    // sum_{t=i}^{j-1} (x_t + sum_{u>t} mu[u][t] x_u)^2 * norms[t]
    let mut x = vec![0i64; dim];
    enum_block(
        &mu, &norms, i, j, dim - 1, &mut x, 0.0, target, &mut best,
    );
    let (coeffs, _) = best?;
    if coeffs.iter().all(|&c| c == 0) {
        return None;
    }
    // strip the gcd so the vector is primitive in the block
    let mut gcd = 0i64;
    for &c in &coeffs {
        gcd = num_integer::gcd(gcd, c.abs());
    }
    let gcd = gcd.max(1);
    Some(coeffs.iter().map(|&c| BigInt::from(c / gcd)).collect())
}

#[allow(clippy::too_many_arguments)]
fn enum_block(
    mu: &[Vec<f64>],
    norms: &[f64],
    i: usize,
    j: usize,
    level_rel: usize,
    x: &mut Vec<i64>,
    partial: f64,
    target: f64,
    best: &mut Option<(Vec<i64>, f64)>,
) {
    let level = i + level_rel;
    if norms[level] <= 0.0 {
        return;
    }
    let bound = best.as_ref().map(|(_, n)| *n).unwrap_or(target);
    let center: f64 = -(level_rel + 1..j - i)
        .map(|r| x[r] as f64 * mu[i + r][level])
        .sum::<f64>();
    let half_width = ((bound - partial).max(0.0) / norms[level]).sqrt();
    let lo = (center - half_width).floor() as i64;
    let hi = (center + half_width).ceil() as i64;
    for xi in lo..=hi {
        x[level_rel] = xi;
        let d = xi as f64 - center;
        let contrib = partial + d * d * norms[level];
        if contrib > bound {
            continue;
        }
        if level_rel == 0 {
            if x.iter().all(|&v| v == 0) {
                continue;
            }
            match best {
                Some((_, n)) if contrib >= *n => {}
                _ => *best = Some((x.clone(), contrib)),
            }
        } else {
            enum_block(mu, norms, i, j, level_rel - 1, x, contrib, target, best);
        }
    }
    x[level_rel] = 0;
}

fn combination(b: &IntMatrix, coeffs: &[i64]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); b.cols()];
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let cb = BigInt::from(c);
        for t in 0..b.cols() {
            v[t] += &cb * &b[(i, t)];
        }
    }
    v
}

fn row_norm2(b: &IntMatrix, i: usize) -> BigInt {
    b.row(i).iter().map(|x| x * x).sum()
}

fn rat_to_f64(r: &num_rational::BigRational) -> f64 {
    let num = bigint_to_f64(r.numer());
    let den = bigint_to_f64(r.denom());
    num / den
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_basis_has_lambda1_one() {
        let b = IntMatrix::identity(3);
        let (_, n2) = shortest_vector_enum(&b).unwrap();
        assert_eq!(n2, BigInt::from(1));
    }

    #[test]
    fn example_2x2() {
        // lattice spanned by (2,0) and (1,2): lambda1 = 2 via (2,0)
        let b = IntMatrix::from_i64_rows(&[&[2, 0], &[1, 2]]);
        let (v, n2) = shortest_vector_enum(&b).unwrap();
        assert_eq!(n2, BigInt::from(4));
        let n: BigInt = v.iter().map(|x| x * x).sum();
        assert_eq!(n, n2);
    }

    #[test]
    fn scaling_homogeneity() {
        let b = IntMatrix::from_i64_rows(&[&[3, 1], &[1, 4]]);
        let (_, n2) = shortest_vector_enum(&b).unwrap();
        let scaled = IntMatrix::from_i64_rows(&[&[9, 3], &[3, 12]]);
        let (_, n2s) = shortest_vector_enum(&scaled).unwrap();
        assert_eq!(n2s, n2 * BigInt::from(9));
    }

    #[test]
    fn dimension_cap_enforced() {
        let b = IntMatrix::identity(13);
        assert!(matches!(
            shortest_vector_enum(&b),
            Err(LatticeError::DimensionCap(13, _))
        ));
    }

    #[test]
    fn exhaustive_check_small() {
        // brute force over coefficient box [-6,6]^2
        let b = IntMatrix::from_i64_rows(&[&[5, 3], &[2, 7]]);
        let (_, n2) = shortest_vector_enum(&b).unwrap();
        let mut best: Option<BigInt> = None;
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                if x == 0 && y == 0 {
                    continue;
                }
                let vx = BigInt::from(5 * x + 2 * y);
                let vy = BigInt::from(3 * x + 7 * y);
                let n = &vx * &vx + &vy * &vy;
                best = Some(match best {
                    None => n,
                    Some(b) if n < b => n,
                    Some(b) => b,
                });
            }
        }
        assert_eq!(n2, best.unwrap());
    }
}
