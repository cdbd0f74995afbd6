//! Identity catalog and verification harness.
//!
//! Each identity is checked at a single parameter point by evaluating both
//! sides exactly, usually along more than one independent route. Identities
//! whose printed form is suspected to contain a typo carry two variants:
//! [`Variant::AsStated`] evaluates the printed formula, and
//! [`Variant::DerivationConsistent`] evaluates the form the surrounding
//! derivation actually produces.

mod checks;
mod config;
mod grid;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub use checks::*;
pub use config::{GridConfig, GridSpec, IndexRange, OutputFormat, Suites, VariantPolicy};
pub use grid::{run_grid, run_grid_with, summarize, Counts, Execution, GridOutcome, Section, Summary};
pub use report::{Params, Status, VerifyReport};

macro_rules! catalog {
    ($($variant:ident => $name:literal, $typo:literal;)*) => {
        /// Closed catalog of checkable identities.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum IdentityId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)*
                }
            }

            /// Whether the printed statement is carried in two variants.
            pub fn has_typo_variants(self) -> bool {
                match self {
                    $(IdentityId::$variant => $typo,)*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(IdentityId::$variant),)*
                    other => Err(Error::Config(format!("unknown identity id {other:?}"))),
                }
            }
        }
    };
}

catalog! {
    QDet3x3 => "q_det_3x3", false;
    AdditionFormula => "addition_formula", false;
    Theorem1 => "theorem1", true;
    Theorem2 => "theorem2", true;
    Cor3BinomInv => "cor3_binom_inv", false;
    Cor4Cramer => "cor4_cramer", false;
    ThmDetT2n1 => "thm_det_t2n1", false;
    CorDetT2n1 => "cor_det_t2n1", false;
    LemmaRel2Step => "lemma_rel_2step", false;
    LemmaGfOdd => "lemma_gf_odd", false;
    LemmaGfRecip => "lemma_gf_recip", false;
    RRecurrence => "r_recurrence", false;
    LemmaCameron => "lemma_cameron", false;
    ThmBellTribo => "thm_bell_tribo", false;
    CorBellTriboInv => "cor_bell_tribo_inv", false;
    ThmBellLstep => "thm_bell_lstep", false;
    CorBellLstepInv => "cor_bell_lstep_inv", false;
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    AsStated,
    DerivationConsistent,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AsStated => "as_stated",
            Variant::DerivationConsistent => "derivation_consistent",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_stated" => Ok(Variant::AsStated),
            "derivation_consistent" => Ok(Variant::DerivationConsistent),
            other => Err(Error::Config(format!("unknown variant {other:?}"))),
        }
    }
}

/// The sequence `r_n` defined by `1 + sum r_n t^n = 1 / sum T_{2n+1} t^n`
/// for the `(u, v, w; 0, 1, 1)` sequence, generated from its closed seeds
///
/// ```text
/// r_1 = -(u + v)
/// r_2 = u^2 - u^3 - u^2 v - u w - w
/// r_3 = D1 r_2 + D2 r_1 - w^2
/// r_n = D1 r_{n-1} + D2 r_{n-2}          (n >= 4)
/// ```
///
/// with `D1 = u^2 - u + v`, `D2 = w (u - 1)`. No radicals are involved, so a
/// vanishing discriminant `D1^2 + 4 D2` needs no special case.
#[derive(Debug, Clone)]
pub struct RSequenceState {
    u: Rational,
    v: Rational,
    w: Rational,
    d1: Rational,
    d2: Rational,
    // r[j] = r_{j+1}
    r: Vec<Rational>,
}

impl RSequenceState {
    pub fn new(u: Rational, v: Rational, w: Rational) -> Self {
        let one = Rational::one();
        let d1 = &u * &u - &u + &v;
        let d2 = &w * (&u - &one);
        let r1 = -(&u + &v);
        let u2 = &u * &u;
        let r2 = &u2 - &u2 * &u - &u2 * &v - &u * &w - &w;
        let r3 = &d1 * &r2 + &d2 * &r1 - &w * &w;
        RSequenceState {
            u,
            v,
            w,
            d1,
            d2,
            r: vec![r1, r2, r3],
        }
    }

    pub fn d1(&self) -> &Rational {
        &self.d1
    }

    pub fn d2(&self) -> &Rational {
        &self.d2
    }

    pub fn params(&self) -> (&Rational, &Rational, &Rational) {
        (&self.u, &self.v, &self.w)
    }

    /// `r_n` for `n >= 1`. Panics on `n = 0`.
    pub fn r(&mut self, n: usize) -> Rational {
        assert!(n >= 1, "r_n is indexed from 1");
        while self.r.len() < n {
            let k = self.r.len();
            let next = &self.d1 * &self.r[k - 1] + &self.d2 * &self.r[k - 2];
            self.r.push(next);
        }
        self.r[n - 1].clone()
    }
}

/// `r_n` for `n >= 1`; see [`RSequenceState`].
pub fn r_sequence(u: &Rational, v: &Rational, w: &Rational, n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("r_n is defined for n >= 1".into()));
    }
    Ok(RSequenceState::new(u.clone(), v.clone(), w.clone()).r(n))
}
