//! Lower-Hessenberg matrices in generator form.
//!
//! Entries above the superdiagonal are structurally zero and never stored.
//! The determinant is evaluated with the standard expansion along the last
//! row,
//!
//! ```text
//! d_k = sum_{r=1..k} (-1)^(k-r) h[k][r] (prod_{j=r..k-1} h[j][j+1]) d_{r-1},   d_0 = 1
//! ```
//!
//! which needs O(n^2) multiplications and no materialized matrix.

use super::matrix::DenseMatrix;
use super::rational::Rational;

/// Lower-Hessenberg matrix given by its superdiagonal and a generator for
/// the entries on and below the diagonal. Indices are 0-based.
pub struct HessenbergColumns<'a> {
    dim: usize,
    superdiag: Vec<Rational>,
    lower: Box<dyn Fn(usize, usize) -> Rational + 'a>,
}

impl<'a> HessenbergColumns<'a> {
    /// `superdiag[j]` is `h[j][j+1]`; `lower(i, j)` is called only for `j <= i`.
    ///
    /// Panics if `superdiag.len() != dim - 1` (for `dim > 0`).
    pub fn new(
        dim: usize,
        superdiag: Vec<Rational>,
        lower: impl Fn(usize, usize) -> Rational + 'a,
    ) -> Self {
        assert_eq!(
            superdiag.len(),
            dim.saturating_sub(1),
            "superdiagonal of an n x n Hessenberg matrix has n-1 entries"
        );
        HessenbergColumns {
            dim,
            superdiag,
            lower: Box::new(lower),
        }
    }

    /// Toeplitz case: `h[i][j] = band[i - j]` for `j <= i`.
    pub fn toeplitz(band: &'a [Rational], superdiag: Vec<Rational>) -> Self {
        let dim = band.len();
        Self::new(dim, superdiag, move |i, j| band[i - j].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        if j <= i {
            (self.lower)(i, j)
        } else if j == i + 1 {
            self.superdiag[i].clone()
        } else {
            Rational::zero()
        }
    }

    /// Leading principal minors `d_0 = 1, d_1, ..., d_n`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut d = Vec::with_capacity(n + 1);
        d.push(Rational::one());
        for k in 0..n {
            // Row k (0-based) expands against minors d_0..d_k.
            let mut acc = Rational::zero();
            let mut superprod = Rational::one();
            let mut negate = false;
            for r in (0..=k).rev() {
                if r < k {
                    superprod *= &self.superdiag[r];
                    negate = !negate;
                    if superprod.is_zero() {
                        break;
                    }
                }
                let h = (self.lower)(k, r);
                if h.is_zero() || d[r].is_zero() {
                    continue;
                }
                let term = h * &superprod * &d[r];
                if negate {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            d.push(acc);
        }
        d
    }

    /// Dense copy, for cross-validation only.
    pub fn materialize(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, self.dim, |i, j| self.entry(i, j))
    }
}

/// Exact determinant of a lower-Hessenberg matrix in O(n^2).
pub fn det_hessenberg(h: &HessenbergColumns<'_>) -> Rational {
    h.leading_minors().pop().expect("d_0 is always present")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, rat};
    use proptest::prelude::*;

    #[test]
    fn one_by_one() {
        let band = [rat(2)];
        let h = HessenbergColumns::toeplitz(&band, vec![]);
        assert_eq!(det_hessenberg(&h), rat(2));
    }

    #[test]
    fn empty_is_one() {
        let h = HessenbergColumns::new(0, vec![], |_, _| rat(5));
        assert_eq!(det_hessenberg(&h), rat(1));
    }

    #[test]
    fn three_by_three_toeplitz() {
        let band = [rat(2), rat(-3), rat(4)];
        let h = HessenbergColumns::toeplitz(&band, vec![rat(1), rat(1)]);
        assert_eq!(det_hessenberg(&h), rat(24));
        assert_eq!(h.materialize().det().unwrap(), rat(24));
    }

    #[test]
    fn zero_superdiagonal_splits_block() {
        // det = det(top-left 1x1) * det(bottom-right 2x2) when h[0][1] = 0.
        let h = HessenbergColumns::new(3, vec![rat(0), rat(2)], |i, j| rat((i * 3 + j + 1) as i64));
        assert_eq!(det_hessenberg(&h), h.materialize().det().unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn matches_dense((n, lower, sup) in (1usize..=30).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec((-6i64..7, 1i64..4), n * n),
            prop::collection::vec((-6i64..7, 1i64..4), n - 1),
        ))) {
            let lower: Vec<Rational> = lower.into_iter().map(|(p, q)| frac(p, q)).collect();
            let sup: Vec<Rational> = sup.into_iter().map(|(p, q)| frac(p, q)).collect();
            let h = HessenbergColumns::new(n, sup, |i, j| lower[i * n + j].clone());
            prop_assert_eq!(det_hessenberg(&h), h.materialize().det().unwrap());
        }
    }
}
