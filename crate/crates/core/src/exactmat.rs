//! Exact integer matrices and symplectic-form checks.
//!
//! Matrices are square, dense, over arbitrary-precision integers. The two
//! nontrivial kernels are both exact and division-controlled:
//!
//! - characteristic polynomials via the Berkowitz algorithm (division-free,
//!   valid over any commutative ring, O(n^4) ring operations),
//! - determinants via Bareiss fraction-free elimination (every division is
//!   exact).
//!
//! Three antisymmetric form matrices are supported; each materialized form is
//! checked to be antisymmetric with determinant one before use.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::intpoly::{json_int, IntPoly};

/// Errors arising from matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must be square and nonempty")]
    NotSquare,
    #[error("dimension mismatch: form expects {expected}, matrix has {got}")]
    Dimension { expected: usize, got: usize },
    #[error("odd-dimension: {0} is odd, but symplectic forms need an even dimension")]
    OddDimension(usize),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type MatrixResult<T> = Result<T, MatrixError>;

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds from rows; errors unless the shape is square and nonempty.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> MatrixResult<IntMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> MatrixResult<IntMatrix> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> IntMatrix {
        assert!(n >= 1, "matrices have dimension at least one");
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..self.n {
            for j in i..self.n {
                if *self.at(i, j) != -self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix product needs equal dimensions");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix sum needs equal dimensions");
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// Direct sum: places `self` and `rhs` on the diagonal of a larger matrix.
    pub fn direct_sum(&self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n + rhs.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..rhs.n {
            for j in 0..rhs.n {
                *out.at_mut(self.n + i, self.n + j) = rhs.at(i, j).clone();
            }
        }
        out
    }

    /// Assembles a 2x2 block matrix `[[a, b], [c, d]]` of equal-sized blocks.
    pub fn from_blocks(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        let g = a.n;
        assert!(b.n == g && c.n == g && d.n == g, "blocks must share a size");
        let mut out = IntMatrix::zeros(2 * g);
        for i in 0..g {
            for j in 0..g {
                *out.at_mut(i, j) = a.at(i, j).clone();
                *out.at_mut(i, g + j) = b.at(i, j).clone();
                *out.at_mut(g + i, j) = c.at(i, j).clone();
                *out.at_mut(g + i, g + j) = d.at(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant via Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 1 {
            return self.entries[0].clone();
        }
        let mut w = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if w[idx(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !w[idx(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    w.swap(idx(k, j), idx(p, j));
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &w[idx(i, j)] * &w[idx(k, k)] - &w[idx(i, k)] * &w[idx(k, j)];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    w[idx(i, j)] = num / &prev;
                }
                w[idx(i, k)] = BigInt::zero();
            }
            prev = w[idx(k, k)].clone();
        }
        let d = w[idx(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Exact monic characteristic polynomial `det(xI - A)`, computed with the
    /// Berkowitz algorithm (division-free).
    pub fn charpoly(&self) -> IntPoly {
        let n = self.n;
        // Descending coefficients of the characteristic polynomial of the
        // leading principal r x r block, starting from r = 1.
        let mut c: Vec<BigInt> = vec![BigInt::one(), -self.at(0, 0).clone()];
        for r in 2..=n {
            // Toeplitz column: 1, -a_rr, -(R S), -(R A S), -(R A^2 S), ...
            // where A is the (r-1) block, R the row to its left, S the column
            // above the diagonal entry.
            let m = r - 1;
            let mut t: Vec<BigInt> = Vec::with_capacity(r + 1);
            t.push(BigInt::one());
            t.push(-self.at(m, m).clone());
            let mut v: Vec<BigInt> = (0..m).map(|i| self.at(i, m).clone()).collect();
            for k in 2..=r {
                let dot: BigInt = (0..m).map(|j| self.at(m, j) * &v[j]).sum();
                t.push(-dot);
                if k < r {
                    let mut next = vec![BigInt::zero(); m];
                    for i in 0..m {
                        let mut acc = BigInt::zero();
                        for j in 0..m {
                            let a = self.at(i, j);
                            if !a.is_zero() {
                                acc += a * &v[j];
                            }
                        }
                        next[i] = acc;
                    }
                    v = next;
                }
            }
            // c' = lower-triangular-Toeplitz(t) * c, length r + 1.
            let mut next = vec![BigInt::zero(); r + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                let jmax = i.min(r - 1);
                let jmin = i.saturating_sub(r);
                let mut acc = BigInt::zero();
                for (j, cj) in c.iter().enumerate().take(jmax + 1).skip(jmin) {
                    acc += &t[i - j] * cj;
                }
                *slot = acc;
            }
            c = next;
        }
        c.reverse();
        IntPoly::new(c)
    }

    /// Checks `A^T J A = J` for the materialized form `J`.
    ///
    /// Errors: odd matrix dimension, or a dimension differing from the form's.
    pub fn is_symplectic(&self, form: &SymplecticForm) -> MatrixResult<bool> {
        if self.n % 2 != 0 {
            return Err(MatrixError::OddDimension(self.n));
        }
        let j = form.materialize();
        if j.dim() != self.n {
            return Err(MatrixError::Dimension {
                expected: j.dim(),
                got: self.n,
            });
        }
        let lhs = self.transpose().mul(&j).mul(self);
        Ok(lhs == j)
    }

    /// JSON form: array of rows, each an array of exact decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.n)
                .map(|i| {
                    serde_json::Value::Array(
                        self.row(i)
                            .iter()
                            .map(|e| serde_json::Value::String(e.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Accepts a JSON array of rows with integer or decimal-string entries.
    pub fn from_json(v: &serde_json::Value) -> MatrixResult<IntMatrix> {
        let arr = v.as_array().ok_or_else(|| MatrixError::Parse {
            line: 1,
            col: 1,
            msg: "expected a JSON array of rows".into(),
        })?;
        let mut rows = Vec::with_capacity(arr.len());
        for (i, row) in arr.iter().enumerate() {
            let row_arr = row.as_array().ok_or_else(|| MatrixError::Parse {
                line: i + 1,
                col: 1,
                msg: "expected each row to be a JSON array".into(),
            })?;
            let mut out = Vec::with_capacity(row_arr.len());
            for (j, item) in row_arr.iter().enumerate() {
                out.push(json_int(item).map_err(|msg| MatrixError::Parse {
                    line: i + 1,
                    col: j + 1,
                    msg,
                })?);
            }
            rows.push(out);
        }
        IntMatrix::from_rows(rows)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    /// Text format: dimension line, then one whitespace-separated row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixError;

    /// Parses the text format: a dimension line `n`, then `n` rows of `n`
    /// whitespace-separated integers. Blank lines are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (ln, first) = lines.next().ok_or(MatrixError::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| MatrixError::Parse {
            line: ln + 1,
            col: 1,
            msg: format!("expected a dimension, got {:?}", first.trim()),
        })?;
        if n == 0 {
            return Err(MatrixError::Parse {
                line: ln + 1,
                col: 1,
                msg: "dimension must be at least one".into(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines.next().ok_or(MatrixError::Parse {
                line: ln + rows.len() + 2,
                col: 1,
                msg: format!("expected {n} rows, found {}", rows.len()),
            })?;
            let mut row = Vec::with_capacity(n);
            for (col, tok) in line.split_whitespace().enumerate() {
                let e = BigInt::from_str(tok).map_err(|e| MatrixError::Parse {
                    line: ln + 1,
                    col: col + 1,
                    msg: format!("bad integer {tok:?}: {e}"),
                })?;
                row.push(e);
            }
            if row.len() != n {
                return Err(MatrixError::Parse {
                    line: ln + 1,
                    col: row.len() + 1,
                    msg: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        IntMatrix::from_rows(rows)
    }
}

/// The antisymmetric form `J` a matrix is tested against.
///
/// Each variant materializes to a concrete `2g x 2g` integer matrix; the
/// materialization asserts antisymmetry and determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymplecticForm {
    /// `[[0, I_g], [-I_g, 0]]`.
    StandardBlock { g: usize },
    /// Block diagonal with `g` copies of `[[0, 1], [-1, 0]]`.
    PairwiseBlocks { g: usize },
    /// Tridiagonal: `+1` on the superdiagonal, `-1` on the subdiagonal.
    Tridiagonal { g: usize },
}

impl SymplecticForm {
    pub fn genus(&self) -> usize {
        match *self {
            SymplecticForm::StandardBlock { g }
            | SymplecticForm::PairwiseBlocks { g }
            | SymplecticForm::Tridiagonal { g } => g,
        }
    }

    /// The concrete `2g x 2g` form matrix.
    pub fn materialize(&self) -> IntMatrix {
        let g = self.genus();
        assert!(g >= 1, "forms need g >= 1");
        let n = 2 * g;
        let mut j = IntMatrix::zeros(n);
        match self {
            SymplecticForm::StandardBlock { .. } => {
                for i in 0..g {
                    *j.at_mut(i, g + i) = BigInt::one();
                    *j.at_mut(g + i, i) = -BigInt::one();
                }
            }
            SymplecticForm::PairwiseBlocks { .. } => {
                for k in 0..g {
                    *j.at_mut(2 * k, 2 * k + 1) = BigInt::one();
                    *j.at_mut(2 * k + 1, 2 * k) = -BigInt::one();
                }
            }
            SymplecticForm::Tridiagonal { .. } => {
                for i in 0..n - 1 {
                    *j.at_mut(i, i + 1) = BigInt::one();
                    *j.at_mut(i + 1, i) = -BigInt::one();
                }
            }
        }
        assert!(j.is_antisymmetric(), "form matrix must be antisymmetric");
        assert!(j.det().is_one(), "form matrix must have determinant one");
        j
    }
}
