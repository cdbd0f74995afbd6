//! Fixed-coefficient linear recurrences with exact rational terms.
//!
//! A [`RecurrenceSpec`] of order `l` describes
//! `a_n = c_1 a_{n-1} + ... + c_l a_{n-l}` together with the initial values
//! `a_0..a_{l-1}`. A [`SequenceHandle`] evaluates it lazily and caches every
//! term it has produced. Negative indices are reached by solving the
//! recurrence backwards, which requires `c_l != 0`.

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    coeffs: Vec<Rational>,
    initials: Vec<Rational>,
}

impl RecurrenceSpec {
    pub fn new(coeffs: Vec<Rational>, initials: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Validation("recurrence order must be at least 1".into()));
        }
        if coeffs.len() != initials.len() {
            return Err(Error::Validation(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                initials.len()
            )));
        }
        if coeffs.iter().all(Rational::is_zero) {
            return Err(Error::Validation("all recurrence coefficients are zero".into()));
        }
        if initials.iter().all(Rational::is_zero) {
            return Err(Error::Validation("all initial values are zero".into()));
        }
        Ok(RecurrenceSpec { coeffs, initials })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    pub fn handle(&self) -> SequenceHandle {
        SequenceHandle::new(self.clone())
    }
}

/// Generalized Tribonacci: coefficients `(u, v, w)`, initial values `(a, b, c)`.
pub fn make_tribonacci(
    u: Rational,
    v: Rational,
    w: Rational,
    a: Rational,
    b: Rational,
    c: Rational,
) -> Result<RecurrenceSpec> {
    RecurrenceSpec::new(vec![u, v, w], vec![a, b, c])
}

/// The l-step Fibonacci numbers with `F_n = 0` for `n <= 0` and `F_1 = 1`.
pub fn make_lstep(l: usize) -> Result<RecurrenceSpec> {
    if l < 2 {
        return Err(Error::Validation(format!("l-step order must be >= 2, got {l}")));
    }
    // Values F_0..F_{l-1} under the zero-history convention; F_{j} for
    // 2 <= j < l is the sum of all earlier terms.
    let mut initials = vec![rat(0), rat(1)];
    for j in 2..l {
        let next: Rational = initials[..j].iter().sum();
        initials.push(next);
    }
    RecurrenceSpec::new(vec![rat(1); l], initials)
}

/// Companion l-step sequence with `a_0 = l` and `a_j = 2^j - 1` for
/// `1 <= j < l`; its terms are the power sums of the roots of
/// `x^l - x^{l-1} - ... - 1`.
pub fn make_lstep_companion(l: usize) -> Result<RecurrenceSpec> {
    if l < 2 {
        return Err(Error::Validation(format!("l-step order must be >= 2, got {l}")));
    }
    let mut initials = vec![Rational::from(l)];
    for j in 1..l {
        initials.push(rat(2).pow(j as i64)? - rat(1));
    }
    RecurrenceSpec::new(vec![rat(1); l], initials)
}

pub fn classical_tribonacci() -> RecurrenceSpec {
    make_tribonacci(rat(1), rat(1), rat(1), rat(0), rat(1), rat(1)).expect("valid preset")
}

pub fn tribonacci_lucas() -> RecurrenceSpec {
    make_tribonacci(rat(1), rat(1), rat(1), rat(3), rat(1), rat(3)).expect("valid preset")
}

/// Coefficients `(1, 0, 1)`, initials `(0, 1, 1)`.
///
/// The recurrence is `a_n = a_{n-1} + a_{n-3}` (OEIS A000930); the textbook
/// Padovan recurrence `a_n = a_{n-2} + a_{n-3}` is the `(0, 1, 1)` instance.
pub fn padovan() -> RecurrenceSpec {
    make_tribonacci(rat(1), rat(0), rat(1), rat(0), rat(1), rat(1)).expect("valid preset")
}

/// Memoizing evaluator for one [`RecurrenceSpec`].
///
/// Evaluation takes `&mut self`; a handle belongs to one worker at a time.
/// Cloning a handle (or building a fresh one from the spec) is how work is
/// spread across threads.
#[derive(Debug, Clone)]
pub struct SequenceHandle {
    spec: RecurrenceSpec,
    // forward[j] = a_j for j >= 0
    forward: Vec<Rational>,
    // backward[j] = a_{-(j+1)}
    backward: Vec<Rational>,
}

impl SequenceHandle {
    pub fn new(spec: RecurrenceSpec) -> Self {
        let forward = spec.initials.clone();
        SequenceHandle {
            spec,
            forward,
            backward: Vec::new(),
        }
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    fn at(&self, n: i64) -> &Rational {
        if n >= 0 {
            &self.forward[n as usize]
        } else {
            &self.backward[(-n - 1) as usize]
        }
    }

    /// `a_n`, extending the cache as needed.
    pub fn term(&mut self, n: i64) -> Result<Rational> {
        let l = self.spec.order() as i64;
        if n >= 0 {
            while (self.forward.len() as i64) <= n {
                let m = self.forward.len() as i64;
                let mut acc = Rational::zero();
                for (k, c) in self.spec.coeffs.iter().enumerate() {
                    acc += c * self.at(m - 1 - k as i64);
                }
                self.forward.push(acc);
            }
            return Ok(self.forward[n as usize].clone());
        }
        let trailing = self.spec.coeffs[self.spec.order() - 1].clone();
        if trailing.is_zero() {
            return Err(Error::BackwardUndefined(n));
        }
        let inv = trailing.recip().expect("nonzero");
        while -(self.backward.len() as i64) - 1 >= n {
            // Solve a_{m+l} = c_1 a_{m+l-1} + ... + c_l a_m for a_m.
            let m = -(self.backward.len() as i64) - 1;
            let mut acc = self.at(m + l).clone();
            for k in 1..self.spec.order() {
                acc -= &self.spec.coeffs[k - 1] * self.at(m + l - k as i64);
            }
            self.backward.push(acc * &inv);
        }
        Ok(self.at(n).clone())
    }

    /// `[a_lo, ..., a_hi]`.
    pub fn terms(&mut self, lo: i64, hi: i64) -> Result<Vec<Rational>> {
        if lo > hi {
            return Err(Error::Validation(format!("empty range {lo}..={hi}")));
        }
        // Materialize the extremes first so the loop only reads the cache.
        self.term(lo)?;
        self.term(hi)?;
        (lo..=hi).map(|n| self.term(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn classical_terms() {
        let mut h = classical_tribonacci().handle();
        assert_eq!(h.terms(0, 7).unwrap(), ints(&[0, 1, 1, 2, 4, 7, 13, 24]));
        assert_eq!(h.terms(3, 3).unwrap(), ints(&[2]));
        assert_eq!(h.term(-1).unwrap(), rat(0));
        assert_eq!(h.term(-2).unwrap(), rat(1));
        assert_eq!(h.term(-3).unwrap(), rat(-1));
    }

    #[test]
    fn tribonacci_lucas_terms() {
        let mut h = tribonacci_lucas().handle();
        assert_eq!(
            h.terms(0, 14).unwrap(),
            ints(&[3, 1, 3, 7, 11, 21, 39, 71, 131, 241, 443, 815, 1499, 2757, 5071])
        );
    }

    #[test]
    fn lstep_families() {
        assert_eq!(make_lstep(2).unwrap().handle().terms(0, 6).unwrap(), ints(&[0, 1, 1, 2, 3, 5, 8]));
        assert_eq!(make_lstep(3).unwrap().handle().terms(0, 6).unwrap(), ints(&[0, 1, 1, 2, 4, 7, 13]));
        assert_eq!(
            make_lstep(4).unwrap().handle().terms(0, 7).unwrap(),
            ints(&[0, 1, 1, 2, 4, 8, 15, 29])
        );
        assert_eq!(
            make_lstep_companion(2).unwrap().handle().terms(0, 6).unwrap(),
            ints(&[2, 1, 3, 4, 7, 11, 18])
        );
        assert_eq!(
            make_lstep_companion(3).unwrap().handle().terms(0, 6).unwrap(),
            ints(&[3, 1, 3, 7, 11, 21, 39])
        );
        assert_eq!(
            make_lstep_companion(4).unwrap().handle().terms(0, 6).unwrap(),
            ints(&[4, 1, 3, 7, 15, 26, 51])
        );
        assert!(make_lstep(1).is_err());
        assert!(make_lstep_companion(0).is_err());
    }

    #[test]
    fn companion_three_is_tribonacci_lucas() {
        let mut a = make_lstep_companion(3).unwrap().handle();
        let mut b = tribonacci_lucas().handle();
        assert_eq!(a.terms(0, 50).unwrap(), b.terms(0, 50).unwrap());
    }

    #[test]
    fn validation() {
        assert!(make_tribonacci(rat(0), rat(0), rat(0), rat(0), rat(1), rat(1)).is_err());
        assert!(make_tribonacci(rat(1), rat(0), rat(1), rat(0), rat(0), rat(0)).is_err());
        assert!(RecurrenceSpec::new(ints(&[1, 1]), ints(&[1])).is_err());
        assert!(RecurrenceSpec::new(vec![], vec![]).is_err());
        let p = padovan();
        assert_eq!(p.coeffs(), &ints(&[1, 0, 1])[..]);
        assert_eq!(p.handle().terms(0, 9).unwrap(), ints(&[0, 1, 1, 1, 2, 3, 4, 6, 9, 13]));
    }

    #[test]
    fn backward_needs_trailing_coefficient() {
        let spec = make_tribonacci(rat(1), rat(1), rat(0), rat(0), rat(1), rat(1)).unwrap();
        let mut h = spec.handle();
        assert_eq!(h.term(10).unwrap(), rat(55));
        assert_eq!(h.term(-1), Err(Error::BackwardUndefined(-1)));
        assert!(h.terms(-2, 3).is_err());
    }

    #[test]
    fn initial_values_are_returned() {
        let spec = make_tribonacci(rat(2), frac(1, 3), rat(-1), frac(5, 7), rat(0), rat(4)).unwrap();
        let mut h = spec.handle();
        assert_eq!(h.term(0).unwrap(), frac(5, 7));
        assert_eq!(h.term(2).unwrap(), rat(4));
    }

    fn spec_strategy() -> impl Strategy<Value = RecurrenceSpec> {
        (1usize..=5)
            .prop_flat_map(|l| {
                (
                    prop::collection::vec((-4i64..5, 1i64..4), l),
                    prop::collection::vec((-4i64..5, 1i64..4), l),
                )
            })
            .prop_filter_map("nonzero trailing", |(c, a)| {
                let coeffs: Vec<Rational> = c.into_iter().map(|(p, q)| frac(p, q)).collect();
                let initials: Vec<Rational> = a.into_iter().map(|(p, q)| frac(p, q)).collect();
                if coeffs.last().unwrap().is_zero() {
                    return None;
                }
                RecurrenceSpec::new(coeffs, initials).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn recurrence_closure(spec in spec_strategy()) {
            let mut h = spec.handle();
            let l = spec.order() as i64;
            for n in l..30 {
                let expect: Rational = (1..=l)
                    .map(|k| &spec.coeffs()[(k - 1) as usize] * h.term(n - k).unwrap())
                    .sum();
                prop_assert_eq!(h.term(n).unwrap(), expect);
            }
        }

        #[test]
        fn backward_then_forward_reproduces_initials(spec in spec_strategy()) {
            let mut back = spec.handle();
            let low = back.terms(-10, -10 + spec.order() as i64 - 1).unwrap();
            // l consecutive zeros would force the whole sequence to vanish.
            let rebuilt = RecurrenceSpec::new(spec.coeffs().to_vec(), low).unwrap();
            let mut fwd = rebuilt.handle();
            let l = spec.order() as i64;
            prop_assert_eq!(fwd.terms(10, 10 + l - 1).unwrap(), spec.initials().to_vec());
        }
    }
}
