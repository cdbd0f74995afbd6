//! Truncated formal power series over [`Rational`].
//!
//! A [`SeriesTrunc`] of order `N` stores `c_0..c_{N-1}` and stands for the
//! class of all series agreeing with it below `t^N`. Binary operations return
//! the smaller of the two orders and never guess coefficients beyond it.

use crate::arith::{det_hessenberg, HessenbergColumns, Rational};
use crate::error::{Error, Result};
use crate::sequences::RecurrenceSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTrunc {
    coeffs: Vec<Rational>,
}

impl SeriesTrunc {
    /// Series of order `coeffs.len()`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        SeriesTrunc { coeffs }
    }

    /// Pads with zeros (or truncates) to exactly `order` coefficients.
    pub fn with_order(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        SeriesTrunc { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::with_order(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^n`; `None` at or beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesTrunc {
            coeffs: self.coeffs[..order.min(self.order())].to_vec(),
        }
    }

    pub fn add(&self, other: &SeriesTrunc) -> SeriesTrunc {
        let n = self.order().min(other.order());
        SeriesTrunc {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &SeriesTrunc) -> SeriesTrunc {
        let n = self.order().min(other.order());
        SeriesTrunc {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> SeriesTrunc {
        SeriesTrunc {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn neg(&self) -> SeriesTrunc {
        SeriesTrunc {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> SeriesTrunc {
        SeriesTrunc {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from(k))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> SeriesTrunc {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from(k + 1));
        }
        SeriesTrunc { coeffs }
    }
}

/// Cauchy product truncated to the smaller order.
pub fn series_mul(f: &SeriesTrunc, g: &SeriesTrunc) -> SeriesTrunc {
    let n = f.order().min(g.order());
    let mut out = vec![Rational::zero(); n];
    for (i, a) in f.coeffs[..n].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs[..n - i].iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    SeriesTrunc::new(out)
}

/// Multiplicative inverse; needs a nonzero constant term.
pub fn series_recip(f: &SeriesTrunc) -> Result<SeriesTrunc> {
    let n = f.order();
    if n == 0 {
        return Ok(SeriesTrunc::zero(0));
    }
    let inv0 = f.coeffs[0].recip().ok_or(Error::NonUnitConstant)?;
    let mut g: Vec<Rational> = Vec::with_capacity(n);
    g.push(inv0.clone());
    for m in 1..n {
        let s: Rational = (1..=m).map(|k| &f.coeffs[k] * &g[m - k]).sum();
        g.push(-(s * &inv0));
    }
    Ok(SeriesTrunc::new(g))
}

/// `exp(f)` for `f(0) = 0`, from `g' = f' g`: `m g_m = sum_k k f_k g_{m-k}`.
pub fn series_exp(f: &SeriesTrunc) -> Result<SeriesTrunc> {
    let n = f.order();
    if n == 0 {
        return Ok(SeriesTrunc::zero(0));
    }
    if !f.coeffs[0].is_zero() {
        return Err(Error::Domain("exp needs a zero constant term".into()));
    }
    let mut g: Vec<Rational> = Vec::with_capacity(n);
    g.push(Rational::one());
    for m in 1..n {
        let s: Rational = (1..=m)
            .map(|k| Rational::from(k) * &f.coeffs[k] * &g[m - k])
            .sum();
        g.push(s / Rational::from(m));
    }
    Ok(SeriesTrunc::new(g))
}

/// `log(g)` for `g(0) = 1`, from `g f' = g'`:
/// `m f_m = m g_m - sum_{k<m} k f_k g_{m-k}`.
pub fn series_log(g: &SeriesTrunc) -> Result<SeriesTrunc> {
    let n = g.order();
    if n == 0 {
        return Ok(SeriesTrunc::zero(0));
    }
    if !g.coeffs[0].is_one() {
        return Err(Error::Domain("log needs constant term 1".into()));
    }
    let mut f: Vec<Rational> = Vec::with_capacity(n);
    f.push(Rational::zero());
    for m in 1..n {
        let mut s = Rational::from(m) * &g.coeffs[m];
        for k in 1..m {
            s -= Rational::from(k) * &f[k] * &g.coeffs[m - k];
        }
        f.push(s / Rational::from(m));
    }
    Ok(SeriesTrunc::new(f))
}

/// Expands `num / den` to `order` coefficients by running the recurrence
/// that `den` imposes on the quotient. `den[0]` must be nonzero.
pub fn expand_rational(num: &[Rational], den: &[Rational], order: usize) -> Result<SeriesTrunc> {
    let lead = den
        .first()
        .and_then(Rational::recip)
        .ok_or(Error::NonUnitConstant)?;
    let mut c: Vec<Rational> = Vec::with_capacity(order);
    for m in 0..order {
        let mut s = num.get(m).cloned().unwrap_or_else(Rational::zero);
        for k in 1..den.len().min(m + 1) {
            s -= &den[k] * &c[m - k];
        }
        c.push(s * &lead);
    }
    Ok(SeriesTrunc::new(c))
}

/// Generating function of an order-3 spec with coefficients `(u, v, w)` and
/// initial values `(a, b, c)`:
/// `(a + (b - u a) t + (c - u b - v a) t^2) / (1 - u t - v t^2 - w t^3)`.
pub fn gf_generalized(spec: &RecurrenceSpec, order: usize) -> Result<SeriesTrunc> {
    if spec.order() != 3 {
        return Err(Error::Domain(format!(
            "generalized Tribonacci generating function needs order 3, got {}",
            spec.order()
        )));
    }
    let [u, v, w] = [&spec.coeffs()[0], &spec.coeffs()[1], &spec.coeffs()[2]];
    let [a, b, c] = [&spec.initials()[0], &spec.initials()[1], &spec.initials()[2]];
    let num = vec![a.clone(), b - u * a, c - u * b - v * a];
    let den = vec![Rational::one(), -u, -v, -w];
    expand_rational(&num, &den, order)
}

/// Generating function of the odd-indexed terms `T_1, T_3, T_5, ...` of the
/// `(u, v, w; 0, 1, 1)` sequence:
/// `(1 - (u^2 - u + v) t - w (u - 1) t^2) / (1 - (u^2 + 2v) t + (v^2 - 2uw) t^2 - w^2 t^3)`.
pub fn gf_odd(u: &Rational, v: &Rational, w: &Rational, order: usize) -> SeriesTrunc {
    let one = Rational::one();
    let two = Rational::from(2);
    let d1 = u * u - u + v;
    let d2 = w * (u - &one);
    let num = vec![one.clone(), -d1, -d2];
    let den = vec![
        one,
        -(u * u + &two * v),
        v * v - &two * u * w,
        -(w * w),
    ];
    expand_rational(&num, &den, order).expect("denominator has constant term 1")
}

/// Generating function of a sequence satisfying
/// `a_n = a_{n-1} + ... + a_{n-l}` with arbitrary initial values: numerator
/// coefficient `j` is `a_j - a_{j-1} - ... - a_0`, denominator
/// `1 - t - ... - t^l`.
pub fn gf_lstep(spec: &RecurrenceSpec, order: usize) -> Result<SeriesTrunc> {
    if !spec.coeffs().iter().all(Rational::is_one) {
        return Err(Error::Domain("l-step generating function needs all coefficients equal to 1".into()));
    }
    let a = spec.initials();
    let num: Vec<Rational> = (0..a.len())
        .map(|j| {
            let mut s = a[j].clone();
            for x in &a[..j] {
                s -= x;
            }
            s
        })
        .collect();
    let mut den = vec![Rational::one()];
    den.extend(std::iter::repeat(-Rational::one()).take(spec.order()));
    expand_rational(&num, &den, order)
}

/// Cameron's operator: `1 + sum z_n t^n = (1 - sum x_n t^n)^(-1)`.
///
/// The constant coefficient of `x` is ignored; the result has constant
/// coefficient 0 and the same order as `x`.
pub fn cameron_forward(x: &SeriesTrunc) -> SeriesTrunc {
    let n = x.order();
    if n == 0 {
        return SeriesTrunc::zero(0);
    }
    let mut base = x.neg();
    base.coeffs[0] = Rational::one();
    let mut z = series_recip(&base).expect("constant term is 1");
    z.coeffs[0] = Rational::zero();
    z
}

/// Inverse of [`cameron_forward`]: `1 - sum x_n t^n = (1 + sum z_n t^n)^(-1)`.
pub fn cameron_inverse(z: &SeriesTrunc) -> SeriesTrunc {
    let n = z.order();
    if n == 0 {
        return SeriesTrunc::zero(0);
    }
    let mut base = z.clone();
    base.coeffs[0] = Rational::one();
    let mut x = series_recip(&base).expect("constant term is 1").neg();
    x.coeffs[0] = Rational::zero();
    x
}

/// `z_n` of Cameron's operator as a determinant: the n x n Hessenberg
/// Toeplitz matrix with entry `(-1)^(p-q) x_{p-q+1}` on and below the
/// diagonal and ones above it. `x[0]` holds `x_1`.
pub fn cameron_det(x: &[Rational], n: usize) -> Result<Rational> {
    if x.len() < n {
        return Err(Error::Arity {
            needed: n,
            got: x.len(),
        });
    }
    let band: Vec<Rational> = x[..n]
        .iter()
        .enumerate()
        .map(|(d, v)| Rational::sign_pow(d as i64) * v)
        .collect();
    let h = HessenbergColumns::toeplitz(&band, vec![Rational::one(); n.saturating_sub(1)]);
    Ok(det_hessenberg(&h))
}
