//! Babai's nearest plane decoder.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::reduction::{gso, round_half_up};
use super::{IntMatrix, LatticeError};

/// Babai's nearest plane: returns the lattice vector `u` found by rounding
/// the target against the Gram-Schmidt planes of `basis`, from the last row
/// down. The residual `target - u` has Gram-Schmidt coefficients in
/// `[-1/2, 1/2)`; rounding is `floor(x + 1/2)` throughout, so ties land on
/// the negative end of the interval.
///
/// The basis should be reduced (output of `lll_reduce`/`bkz_reduce`) for
/// the residual to be short, but any basis is accepted.
pub fn babai_nearest_plane(
    basis: &IntMatrix,
    target: &[BigInt],
) -> Result<Vec<BigInt>, LatticeError> {
    if target.len() != basis.cols() {
        return Err(LatticeError::Shape(format!(
            "target has {} entries, basis has {} columns",
            target.len(),
            basis.cols()
        )));
    }
    let n = basis.rows();
    let m = basis.cols();
    let g = gso(basis);
    // bstar vectors are needed explicitly for the projections
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = basis
            .row(i)
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            if g.bstar_norm2[j].is_zero() {
                continue;
            }
            for t in 0..m {
                let sub = &g.mu[i][j] * &bstar[j][t];
                v[t] -= sub;
            }
        }
        bstar.push(v);
    }

    let mut t: Vec<BigRational> = target
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let mut u = vec![BigInt::zero(); m];
    for j in (0..n).rev() {
        if g.bstar_norm2[j].is_zero() {
            continue;
        }
        let mut dot = BigRational::zero();
        for k in 0..m {
            dot += &t[k] * &bstar[j][k];
        }
        let coeff = dot / &g.bstar_norm2[j];
        let c = round_half_up(&coeff);
        if !c.is_zero() {
            for k in 0..m {
                let cb = BigRational::from_integer(&c * &basis[(j, k)]);
                t[k] -= cb;
                u[k] += &c * &basis[(j, k)];
            }
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn residual_coeffs(basis: &IntMatrix, target: &[BigInt], u: &[BigInt]) -> Vec<BigRational> {
        // coefficients of target - u w.r.t. the Gram-Schmidt directions
        let n = basis.rows();
        let m = basis.cols();
        let g = gso(basis);
        let mut bstar: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n {
            let mut v: Vec<BigRational> = basis
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            for j in 0..i {
                for t in 0..m {
                    let sub = &g.mu[i][j] * &bstar[j][t];
                    v[t] -= sub;
                }
            }
            bstar.push(v);
        }
        let r: Vec<BigRational> = (0..m)
            .map(|k| BigRational::from_integer(&target[k] - &u[k]))
            .collect();
        (0..n)
            .map(|j| {
                let mut dot = BigRational::zero();
                for k in 0..m {
                    dot += &r[k] * &bstar[j][k];
                }
                dot / &g.bstar_norm2[j]
            })
            .collect()
    }

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    #[test]
    fn lattice_point_maps_to_itself() {
        let b = IntMatrix::from_i64_rows(&[&[3, 1], &[1, 4]]);
        let target = vec![BigInt::from(4), BigInt::from(5)]; // row0 + row1
        let u = babai_nearest_plane(&b, &target).unwrap();
        assert_eq!(u, target);
    }

    #[test]
    fn identity_basis_exact() {
        let b = IntMatrix::identity(2);
        let target = vec![BigInt::from(3), BigInt::from(5)];
        let u = babai_nearest_plane(&b, &target).unwrap();
        assert_eq!(u, target);
    }

    #[test]
    fn tie_breaks_downward() {
        // basis diag(2,2), target (1,1): both coefficients are exactly 1/2,
        // so they round up and the residual is (-1,-1).
        let b = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let target = vec![BigInt::from(1), BigInt::from(1)];
        let u = babai_nearest_plane(&b, &target).unwrap();
        assert_eq!(u, vec![BigInt::from(2), BigInt::from(2)]);
        // residual norm^2 = 2 equals the exact CVP distance here
        let d2: BigInt = target
            .iter()
            .zip(&u)
            .map(|(t, x)| (t - x) * (t - x))
            .sum();
        assert_eq!(d2, BigInt::from(2));
    }

    #[test]
    fn residual_in_half_open_parallelepiped() {
        let b = IntMatrix::from_i64_rows(&[&[4, 1, 0], &[1, 5, 2], &[0, 1, 6]]);
        let red = crate::lattice::lll_reduce(&b);
        for (tx, ty, tz) in [(7i64, -3, 11), (0, 0, 1), (-5, 4, 2)] {
            let target = vec![BigInt::from(tx), BigInt::from(ty), BigInt::from(tz)];
            let u = babai_nearest_plane(&red, &target).unwrap();
            for c in residual_coeffs(&red, &target, &u) {
                assert!(c >= -half() && c < half(), "coefficient {c} out of range");
            }
        }
    }

    #[test]
    fn orthogonal_basis_solves_cvp() {
        let b = IntMatrix::from_i64_rows(&[&[5, 0], &[0, 3]]);
        let target = vec![BigInt::from(11), BigInt::from(-4)];
        let u = babai_nearest_plane(&b, &target).unwrap();
        assert_eq!(u, vec![BigInt::from(10), BigInt::from(-3)]);
    }
}
