//! Exact-arithmetic engine for generalized Tribonacci and l-step Fibonacci
//! sequences, with a harness that checks identities, matrix constructions,
//! and determinant representations of these sequences against independent
//! evaluation routes.

pub mod arith;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod identities;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
