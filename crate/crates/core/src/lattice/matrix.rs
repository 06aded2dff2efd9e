//! Dense integer matrices in row-major order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LatticeError;

/// A dense integer matrix; rows are lattice basis vectors throughout this
/// crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix needs at least one column");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        IntMatrix {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let mut m = Self::zero(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            let a = i * self.cols + k;
            let b = j * self.cols + k;
            self.entries.swap(a, b);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            let a = r * self.cols + i;
            let b = r * self.cols + j;
            self.entries.swap(a, b);
        }
    }

    /// Move column `from` in front of all others, shifting the rest right.
    pub fn move_col_to_front(&mut self, from: usize) {
        for r in 0..self.rows {
            let base = r * self.cols;
            self.entries[base..base + from + 1].rotate_right(1);
        }
    }

    /// row[i] += q * row[j]
    pub fn add_multiple_of_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let v = &self.entries[j * self.cols + k] * q;
            self.entries[i * self.cols + k] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            let v = -&self.entries[idx];
            self.entries[idx] = v;
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = &self[(i, k)];
                if v.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = v * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let pivot = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match pivot {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Inverse of a unimodular integer matrix (determinant +-1).
    pub fn inverse_unimodular(&self) -> IntMatrix {
        assert!(self.is_square());
        let n = self.rows;
        // Gauss-Jordan over the rationals would do; over a unimodular matrix
        // the adjugate route stays integral: inv = adj / det with det = +-1.
        let d = self.det();
        assert!(d.clone().abs().is_one(), "matrix is not unimodular");
        let mut adj = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let mut cof = minor.det();
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                adj[(j, i)] = cof;
            }
        }
        if d.is_negative() {
            for e in adj.entries.iter_mut() {
                let v = -&*e;
                *e = v;
            }
        }
        adj
    }

    fn minor(&self, skip_i: usize, skip_j: usize) -> IntMatrix {
        let n = self.rows;
        if n == 1 {
            return IntMatrix::identity(1);
        }
        let mut out = IntMatrix::zero(n - 1, n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == skip_i {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == skip_j {
                    continue;
                }
                out[(r, c)] = self[(i, j)].clone();
                c += 1;
            }
            r += 1;
        }
        out
    }

    /// Text format: first line `rows cols`, then one line per row of
    /// space-separated decimal entries.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl FromStr for IntMatrix {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LatticeError::Parse("empty input".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| LatticeError::Parse(format!("bad dimension {t:?}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        if dims.len() != 2 || dims[0] == 0 || dims[1] == 0 {
            return Err(LatticeError::Parse(format!(
                "header must be 'rows cols', got {header:?}"
            )));
        }
        let (rows, cols) = (dims[0], dims[1]);
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| LatticeError::Parse("not enough rows".into()))?;
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| {
                    BigInt::from_str(t)
                        .map_err(|e| LatticeError::Parse(format!("bad entry {t:?}: {e}")))
                })
                .collect::<Result<_, _>>()?;
            if row.len() != cols {
                return Err(LatticeError::Parse(format!(
                    "row has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}
