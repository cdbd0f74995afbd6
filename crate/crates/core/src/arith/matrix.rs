use std::fmt;

use num_traits::{One, Zero};

use super::rational::{Integer, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix over [`Rational`].
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, entries }
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Copy with column `c` replaced by `column`.
    pub fn with_column(&self, c: usize, column: &[Rational]) -> Result<Self> {
        if column.len() != self.rows || c >= self.cols {
            return Err(Error::Dimension(format!(
                "cannot place a length-{} column at index {c} of a {}x{} matrix",
                column.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = self.clone();
        for (r, v) in column.iter().enumerate() {
            out.set(r, c, v.clone());
        }
        Ok(out)
    }

    /// Copy with column `c` moved to the front, the others keeping their order.
    pub fn column_to_front(&self, c: usize) -> Result<Self> {
        if c >= self.cols {
            return Err(Error::Dimension(format!("column {c} out of range")));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, j| {
            let src = match j {
                0 => c,
                j if j <= c => j - 1,
                j => j,
            };
            self.get(r, src).clone()
        }))
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant.
    ///
    /// All-integer matrices go through Bareiss fraction-free elimination;
    /// anything else through rational Gaussian elimination. Both pivot on
    /// the first nonzero entry of the column.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.entries.iter().all(Rational::is_integer) {
            Ok(Rational::from_integer(self.det_bareiss()))
        } else {
            Ok(self.det_gauss())
        }
    }

    fn det_bareiss(&self) -> Integer {
        let n = self.rows;
        if n == 0 {
            return Integer::one();
        }
        let mut a: Vec<Integer> = self
            .entries
            .iter()
            .map(|x| x.numer().clone())
            .collect();
        let mut sign = false;
        let mut prev = Integer::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Integer::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = !sign;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                    // Sylvester's identity makes this division exact.
                    a[i * n + j] = v / &prev;
                }
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    fn det_gauss(&self) -> Rational {
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det *= &pivot;
            let inv = pivot.recip().expect("pivot is nonzero");
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = &a[i * n + k] * &inv;
                for j in k + 1..n {
                    let delta = &factor * &a[k * n + j];
                    a[i * n + j] -= delta;
                }
            }
        }
        det
    }

    /// Rational-path determinant regardless of entry type. Used to cross-check
    /// the fraction-free path.
    pub fn det_rational_path(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        Ok(self.det_gauss())
    }
}

/// Exact determinant of a square matrix.
pub fn det_dense(m: &DenseMatrix) -> Result<Rational> {
    m.det()
}

/// Exact matrix product.
pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.mul(b)
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
