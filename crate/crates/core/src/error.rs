use thiserror::Error;

/// Errors raised by the exact-arithmetic engine and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arity error: need {needed} inputs, got {got}")]
    Arity { needed: usize, got: usize },
    #[error("backward extension undefined: trailing coefficient is zero (index {0})")]
    BackwardUndefined(i64),
    #[error("non-unit constant term")]
    NonUnitConstant,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
