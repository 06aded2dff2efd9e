//! LLL and blockwise (BKZ-style) lattice basis reduction over exact
//! rationals, sized for desk-scale dimensions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::enumeration::shortest_in_projected_block;
use super::normal_form::hnf;
use super::IntMatrix;

/// Exact Gram-Schmidt data for a row basis: `mu[i][j]` coefficients and
/// squared norms of the orthogonalized vectors.
pub(crate) struct Gso {
    pub mu: Vec<Vec<BigRational>>,
    pub bstar_norm2: Vec<BigRational>,
}

pub(crate) fn gso(basis: &IntMatrix) -> Gso {
    let n = basis.rows();
    let m = basis.cols();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norm2 = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut v: Vec<BigRational> = basis
            .row(i)
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            if norm2[j].is_zero() {
                continue;
            }
            let mut dot = BigRational::zero();
            for t in 0..m {
                dot += BigRational::from_integer(basis[(i, t)].clone()) * &bstar[j][t];
            }
            let coeff = dot / &norm2[j];
            for t in 0..m {
                let sub = &coeff * &bstar[j][t];
                v[t] -= sub;
            }
            mu[i][j] = coeff;
        }
        let mut n2 = BigRational::zero();
        for t in 0..m {
            n2 += &v[t] * &v[t];
        }
        norm2[i] = n2;
        bstar.push(v);
    }
    Gso {
        mu,
        bstar_norm2: norm2,
    }
}

/// floor(x + 1/2): nearest integer with the residual tie in [-1/2, 1/2).
pub(crate) fn round_half_up(x: &BigRational) -> BigInt {
    let two = BigRational::from_integer(BigInt::from(2));
    let shifted = x + BigRational::new(BigInt::one(), BigInt::from(2));
    let _ = two;
    shifted.floor().to_integer()
}

/// Exact LLL reduction with Lovasz parameter `delta = 99/100`.
pub fn lll_reduce(basis: &IntMatrix) -> IntMatrix {
    let mut b = basis.clone();
    let n = b.rows();
    if n <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let mut g = gso(&b);
    let mut k = 1usize;
    while k < n {
        // size-reduce row k against rows k-1..0
        for j in (0..k).rev() {
            let q = round_half_up(&g.mu[k][j]);
            if !q.is_zero() {
                b.add_multiple_of_row(k, j, &-&q);
                g = gso(&b);
            }
        }
        let lhs = &g.bstar_norm2[k]
            + &g.mu[k][k - 1] * &g.mu[k][k - 1] * &g.bstar_norm2[k - 1];
        if lhs >= &delta * &g.bstar_norm2[k - 1] {
            k += 1;
        } else {
            b.swap_rows(k, k - 1);
            g = gso(&b);
            k = k.max(2) - 1;
        }
    }
    b
}

/// Blockwise reduction: LLL plus enumeration-based block improvement for
/// `beta > 2`. For `beta <= 2` this is exactly LLL with delta = 0.99. The
/// output spans the same lattice as the input; tours are capped, so the
/// call always terminates.
pub fn bkz_reduce(basis: &IntMatrix, beta: usize) -> IntMatrix {
    let mut b = lll_reduce(basis);
    let n = b.rows();
    if beta <= 2 || n <= 2 {
        return b;
    }
    let beta = beta.min(n);
    let max_tours = 16;
    for _ in 0..max_tours {
        let mut improved = false;
        for i in 0..n.saturating_sub(1) {
            let j = (i + beta).min(n);
            let g = gso(&b);
            let Some(coeffs) = shortest_in_projected_block(&b, &g, i, j) else {
                continue;
            };
            // coeffs describe a vector strictly shorter than b*_i in the
            // projection; splice it in with a unimodular block transform.
            if let Some(t) = complete_primitive(&coeffs) {
                let rows: Vec<Vec<BigInt>> = (i..j).map(|r| b.row_vec(r)).collect();
                let block = IntMatrix::from_rows(rows);
                let new_block = t.mul(&block);
                for (bi, r) in (i..j).enumerate() {
                    for c in 0..b.cols() {
                        b[(r, c)] = new_block[(bi, c)].clone();
                    }
                }
                b = lll_reduce(&b);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    b
}

/// Complete a primitive integer vector `x` (gcd 1) to a unimodular matrix
/// whose first row is `x`.
fn complete_primitive(x: &[BigInt]) -> Option<IntMatrix> {
    let d = x.len();
    if d == 0 || x.iter().all(|v| v.is_zero()) {
        return None;
    }
    if d == 1 {
        return Some(IntMatrix::from_rows(vec![vec![x[0].clone()]]));
    }
    // U * x^T = (0,...,0,g)^T with g = gcd(x) = 1, so x is the last row of
    // U^{-T}; rotate it to the front.
    let col = IntMatrix::from_rows(x.iter().map(|v| vec![v.clone()]).collect());
    let res = hnf(&col).ok()?;
    let g = &res.h[(d - 1, 0)];
    if !g.abs().is_one() {
        return None;
    }
    let u_inv_t = res.u.inverse_unimodular().transpose();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    rows.push(u_inv_t.row_vec(d - 1));
    for i in 0..d - 1 {
        rows.push(u_inv_t.row_vec(i));
    }
    let t = IntMatrix::from_rows(rows);
    debug_assert!(t.det().abs().is_one());
    if t.row(0) != x {
        // g = -1 case: flip the first row's sign
        let mut t2 = t;
        t2.negate_row(0);
        if t2.row(0) != x {
            return None;
        }
        return Some(t2);
    }
    Some(t)
}
