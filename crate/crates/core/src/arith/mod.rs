//! Exact integers and rationals, dense rational matrices, and the two
//! determinant evaluators (dense elimination and lower-Hessenberg recursion).

mod hessenberg;
mod matrix;
mod rational;

pub use hessenberg::{det_hessenberg, HessenbergColumns};
pub use matrix::{det_dense, mat_mul, DenseMatrix};
pub use rational::{frac, rat, Integer, Rational};
