//! Binomial coefficients, the row-reversed Pascal matrix with its closed-form
//! inverse, binomial inversion, and complete Bell polynomials.

use num_traits::{One, Zero};

use crate::arith::{det_hessenberg, DenseMatrix, HessenbergColumns, Integer, Rational};
use crate::error::{Error, Result};

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial with negative n = {n}")));
    }
    Ok(choose(n as usize, k))
}

pub(crate) fn choose(n: usize, k: i64) -> Integer {
    if k < 0 || k as usize > n {
        return Integer::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = Integer::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub(crate) fn choose_q(n: usize, k: i64) -> Rational {
    Rational::from_integer(choose(n, k))
}

/// Size and scale of the row-reversed Pascal matrix; the matrix is
/// `(k+1) x (k+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalParam {
    pub k: usize,
    pub alpha: Rational,
}

impl PascalParam {
    pub fn new(k: usize, alpha: Rational) -> Self {
        PascalParam { k, alpha }
    }
}

/// Entry `(r, j)` is `C(k - r, j) alpha^j`, so the top row is the k-th
/// binomial row and the bottom row is `1, 0, ..., 0`.
pub fn pascal_rowrev(p: &PascalParam) -> DenseMatrix {
    let k = p.k;
    let powers = alpha_powers(&p.alpha, k);
    DenseMatrix::from_fn(k + 1, k + 1, |r, j| choose_q(k - r, j as i64) * &powers[j])
}

/// Closed-form inverse: entry `(i, j)` is `(-1)^(i+j-k) C(i, k-j) alpha^(-i)`.
pub fn pascal_rowrev_inv(p: &PascalParam) -> Result<DenseMatrix> {
    let k = p.k;
    let inv_alpha = p
        .alpha
        .recip()
        .ok_or_else(|| Error::Domain("row-reversed Pascal inverse needs alpha != 0".into()))?;
    let powers = alpha_powers(&inv_alpha, k);
    Ok(DenseMatrix::from_fn(k + 1, k + 1, |i, j| {
        let c = choose(i, k as i64 - j as i64);
        if c.is_zero() {
            return Rational::zero();
        }
        Rational::sign_pow(i as i64 + j as i64 - k as i64) * Rational::from_integer(c) * &powers[i]
    }))
}

fn alpha_powers(alpha: &Rational, k: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k + 1);
    let mut acc = Rational::one();
    for _ in 0..=k {
        out.push(acc.clone());
        acc *= alpha;
    }
    out
}

/// `det pascal_rowrev(k, 1) = (-1)^(k(k+1)/2)`: ones on the anti-diagonal,
/// zeros below it.
pub fn det_pascal_rowrev(k: usize) -> Integer {
    let e = k * (k + 1) / 2;
    if e % 2 == 0 {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// `a_j = sum_u (-1)^(j-u) C(j, u) b_u`.
pub fn binomial_inversion(b: &[Rational]) -> Vec<Rational> {
    (0..b.len())
        .map(|j| {
            (0..=j)
                .map(|u| Rational::sign_pow((j - u) as i64) * choose_q(j, u as i64) * &b[u])
                .sum()
        })
        .collect()
}

/// `b_j = sum_u C(j, u) a_u`; undoes [`binomial_inversion`].
pub fn binomial_transform(a: &[Rational]) -> Vec<Rational> {
    (0..a.len())
        .map(|j| (0..=j).map(|u| choose_q(j, u as i64) * &a[u]).sum())
        .collect()
}

/// Complete Bell polynomial `Y_n(x_1, ..., x_n)` at rational arguments.
///
/// `xs[0]` holds `x_1`. Evaluated with
/// `Y_{m+1} = sum_{k=0..m} C(m, k) Y_{m-k} x_{k+1}`, `Y_0 = 1`.
pub fn bell_complete(xs: &[Rational], n: usize) -> Result<Rational> {
    if xs.len() < n {
        return Err(Error::Arity {
            needed: n,
            got: xs.len(),
        });
    }
    let mut y = Vec::with_capacity(n + 1);
    y.push(Rational::one());
    for m in 0..n {
        let next: Rational = (0..=m)
            .map(|k| choose_q(m, k as i64) * &y[m - k] * &xs[k])
            .sum();
        y.push(next);
    }
    Ok(y.pop().expect("Y_0 present"))
}

/// `(a_1, 1! a_2, 2! a_3, ...)`: the Bell arguments that turn `Y_m / m!` into
/// the coefficients of `exp(sum a_k t^k / k)`.
pub fn factorial_weighted(a: &[Rational]) -> Vec<Rational> {
    let mut fact = Rational::one();
    a.iter()
        .enumerate()
        .map(|(j, x)| {
            if j > 0 {
                fact *= &Rational::from(j);
            }
            x * &fact
        })
        .collect()
}

/// `b_m = det(H) / m!` where `H` is the m x m lower-Hessenberg Toeplitz
/// matrix with `a_1..a_m` down the first column and superdiagonal
/// `-1, -2, ..., -(m-1)`.
///
/// Equals `Y_m(a_1, 1! a_2, ..., (m-1)! a_m) / m!`. `a[0]` holds `a_1`.
pub fn bell_via_det(a: &[Rational], m: usize) -> Result<Rational> {
    if a.len() < m {
        return Err(Error::Arity {
            needed: m,
            got: a.len(),
        });
    }
    let superdiag = (1..m).map(|j| -Rational::from(j)).collect();
    let h = HessenbergColumns::toeplitz(&a[..m], superdiag);
    Ok(det_hessenberg(&h) / Rational::factorial(m))
}

/// Inverse of [`bell_via_det`]: recovers `a_n` from `b_1..b_n` as
/// `(-1)^(n-1)` times the Hessenberg determinant with first column
/// `b_1, 2 b_2, ..., n b_n`, the other columns Toeplitz in `b`, and
/// superdiagonal all ones. `b[0]` holds `b_1`.
pub fn bell_inverse_det(b: &[Rational], n: usize) -> Result<Rational> {
    if b.len() < n {
        return Err(Error::Arity {
            needed: n,
            got: b.len(),
        });
    }
    let h = HessenbergColumns::new(n, vec![Rational::one(); n.saturating_sub(1)], |i, j| {
        if j == 0 {
            Rational::from(i + 1) * &b[i]
        } else {
            b[i - j].clone()
        }
    });
    Ok(Rational::sign_pow(n as i64 - 1) * det_hessenberg(&h))
}
