//! Hermite and Smith normal forms with unimodular transformations.
//!
//! The HNF convention is the lower-triangular one acting on row bases:
//! `U * M = H` with `h[j][j] > 0` and `0 <= h[i][j] < h[j][j]` for `i > j`.
//! Column operations are never used for HNF, so `H` is a canonical basis of
//! the row lattice of `M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LatticeError};

#[derive(Debug, Clone)]
pub struct HnfResult {
    /// Lower-triangular Hermite normal form (zero rows, if any, on top).
    pub h: IntMatrix,
    /// Unimodular transform with `u * m = h`.
    pub u: IntMatrix,
}

#[derive(Debug, Clone)]
pub struct SnfResult {
    /// The square basis the transforms refer to (equals the input when the
    /// input is square; otherwise its HNF square block).
    pub basis: IntMatrix,
    /// Diagonal of the Smith normal form, `d[0] | d[1] | ... | d[n-1]`.
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Upper-triangular row HNF: pivots top-left to bottom-right, zero rows at
/// the bottom, entries above each pivot reduced into `[0, pivot)`.
fn hnf_upper(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix), LatticeError> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows {
            return Err(LatticeError::RankError {
                rank: pivot_row,
                need: cols,
            });
        }
        // Euclidean elimination below the pivot position.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if !h[(r, col)].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if h[(r, col)].abs() < h[(b, col)].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else {
                return Err(LatticeError::RankError {
                    rank: pivot_row,
                    need: cols,
                });
            };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&h[(r, col)], &h[(pivot_row, col)]);
                h.add_multiple_of_row(r, pivot_row, &-&q);
                u.add_multiple_of_row(r, pivot_row, &-&q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                h.add_multiple_of_row(r, pivot_row, &-&q);
                u.add_multiple_of_row(r, pivot_row, &-&q);
            }
        }
        pivot_row += 1;
    }
    Ok((h, u))
}

/// Nearest-integer quotient, used to keep elimination entries small.
fn rounded_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if BigInt::from(2) * r.abs() > b.abs() {
        if b.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Lower-triangular HNF with transform, per the convention above.
///
/// Requires full column rank. For an `m x n` input with `m > n` the zero
/// rows of `h` sit on top and the square HNF block occupies the last `n`
/// rows.
pub fn hnf(m: &IntMatrix) -> Result<HnfResult, LatticeError> {
    let reversed = reverse_both(m);
    let (h_up, u_up) = hnf_upper(&reversed)?;
    Ok(HnfResult {
        h: reverse_both(&h_up),
        u: reverse_both(&u_up),
    })
}

fn reverse_both(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = m[(rows - 1 - i, cols - 1 - j)].clone();
        }
    }
    out
}

/// Basis for the left kernel `{ x : x * m = 0 }` of an `m x n` matrix whose
/// columns need not be independent. Returns `None` when the kernel is
/// trivial.
pub fn left_kernel(m: &IntMatrix) -> Option<IntMatrix> {
    // Row-reduce with the transform; kernel rows of U correspond to zero
    // rows of the echelon form. Use the upper HNF directly (rank may be
    // deficient, so run a rank-tolerant pass).
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if !h[(r, col)].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if h[(r, col)].abs() < h[(b, col)].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&h[(r, col)], &h[(pivot_row, col)]);
                h.add_multiple_of_row(r, pivot_row, &-&q);
                u.add_multiple_of_row(r, pivot_row, &-&q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }
    let kernel_rows: Vec<Vec<BigInt>> = (0..rows)
        .filter(|&r| (0..cols).all(|c| h[(r, c)].is_zero()))
        .map(|r| u.row_vec(r))
        .collect();
    if kernel_rows.is_empty() {
        None
    } else {
        Some(IntMatrix::from_rows(kernel_rows))
    }
}

/// Smith normal form `u * basis * v = d` with `d` diagonal and
/// `d[0] | d[1] | ... | d[n-1]`.
///
/// Rectangular inputs are first squared through their HNF block.
pub fn snf(m: &IntMatrix) -> Result<SnfResult, LatticeError> {
    let basis = if m.is_square() {
        m.clone()
    } else {
        let res = hnf(m)?;
        let n = m.cols();
        let top_zero = m.rows() - n;
        let rows: Vec<Vec<BigInt>> = (top_zero..m.rows()).map(|i| res.h.row_vec(i)).collect();
        IntMatrix::from_rows(rows)
    };
    let n = basis.rows();
    let mut d = basis.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for k in 0..n {
        // Find a nonzero pivot in the trailing submatrix.
        let find_pivot = |d: &IntMatrix| -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if !d[(i, j)].is_zero() {
                        best = match best {
                            None => Some((i, j)),
                            Some(p) if d[(i, j)].abs() < d[p].abs() => Some((i, j)),
                            keep => keep,
                        };
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = find_pivot(&d) else {
            return Err(LatticeError::RankError { rank: k, need: n });
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        'outer: loop {
            // Clear column k below the pivot.
            let mut clean = true;
            for i in k + 1..n {
                if d[(i, k)].is_zero() {
                    continue;
                }
                if (&d[(i, k)] % &d[(k, k)]).is_zero() {
                    let q = &d[(i, k)] / &d[(k, k)];
                    d.add_multiple_of_row(i, k, &-&q);
                    u.add_multiple_of_row(i, k, &-&q);
                } else {
                    let q = rounded_quotient(&d[(i, k)], &d[(k, k)]);
                    d.add_multiple_of_row(i, k, &-&q);
                    u.add_multiple_of_row(i, k, &-&q);
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Clear row k to the right of the pivot (column operations).
            for j in k + 1..n {
                if d[(j, k)].is_zero() && d[(k, j)].is_zero() {
                    continue;
                }
                if d[(k, j)].is_zero() {
                    continue;
                }
                if (&d[(k, j)] % &d[(k, k)]).is_zero() {
                    let q = &d[(k, j)] / &d[(k, k)];
                    add_multiple_of_col(&mut d, j, k, &-&q);
                    add_multiple_of_col(&mut v, j, k, &-&q);
                } else {
                    let q = rounded_quotient(&d[(k, j)], &d[(k, k)]);
                    add_multiple_of_col(&mut d, j, k, &-&q);
                    add_multiple_of_col(&mut v, j, k, &-&q);
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    continue 'outer;
                }
            }
            // Both cleared; enforce divisibility of the trailing block.
            let mut offender = None;
            'scan: for i in k + 1..n {
                for j in k + 1..n {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.add_multiple_of_row(k, i, &BigInt::one());
                    u.add_multiple_of_row(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    Ok(SnfResult { basis, d, u, v })
}

fn add_multiple_of_col(m: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows() {
        let add = &m[(r, k)] * q;
        m[(r, j)] += add;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_identity() {
        let m = IntMatrix::identity(3);
        let res = hnf(&m).unwrap();
        assert_eq!(res.h, IntMatrix::identity(3));
        assert_eq!(res.u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_2x2_example() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[1, 1]]);
        let res = hnf(&m).unwrap();
        assert_eq!(res.u.mul(&m), res.h);
        assert!(res.u.det().abs().is_one());
        // lower triangular, diagonal {2, 1} in the paper's orientation
        assert!(res.h[(0, 1)].is_zero());
        assert_eq!(res.h[(0, 0)], BigInt::from(2));
        assert_eq!(res.h[(1, 1)], BigInt::from(1));
        assert_eq!(res.h[(1, 0)], BigInt::from(1));
    }

    #[test]
    fn hnf_is_permutation_invariant() {
        let m = IntMatrix::from_i64_rows(&[&[3, 1, 0], &[1, 5, 2], &[0, 7, 9]]);
        let mut p = m.clone();
        p.swap_rows(0, 2);
        let h1 = hnf(&m).unwrap().h;
        let h2 = hnf(&p).unwrap().h;
        assert_eq!(h1, h2);
    }

    #[test]
    fn hnf_invariants_hold() {
        let m = IntMatrix::from_i64_rows(&[&[4, 2], &[2, 8]]);
        let res = hnf(&m).unwrap();
        let n = 2;
        for j in 0..n {
            assert!(res.h[(j, j)].is_positive());
            for i in 0..n {
                if i > j {
                    assert!(!res.h[(i, j)].is_negative() && res.h[(i, j)] < res.h[(j, j)]);
                } else if i < j {
                    assert!(res.h[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_rank_deficient_errors() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(hnf(&m), Err(LatticeError::RankError { .. })));
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let res = snf(&m).unwrap();
        assert_eq!(res.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
        assert_eq!(res.u.mul(&res.basis).mul(&res.v), res.d);
        assert!(res.u.det().abs().is_one());
        assert!(res.v.det().abs().is_one());
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(4);
        let res = snf(&m).unwrap();
        assert_eq!(res.d, IntMatrix::identity(4));
    }

    #[test]
    fn snf_row_swap_invariant() {
        let m = IntMatrix::from_i64_rows(&[&[6, 4, 2], &[2, 8, 4], &[10, 2, 12]]);
        let mut p = m.clone();
        p.swap_rows(0, 1);
        let d1 = snf(&m).unwrap().diagonal();
        let d2 = snf(&p).unwrap().diagonal();
        assert_eq!(d1, d2);
    }

    #[test]
    fn left_kernel_works() {
        // rows: (1,2), (2,4), (0,1): kernel contains (2,-1,0)
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel(&m).unwrap();
        assert_eq!(k.rows(), 1);
        let prod = k.mul(&m);
        for j in 0..prod.cols() {
            assert!(prod[(0, j)].is_zero());
        }
    }
}
