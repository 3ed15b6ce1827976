//! Exact arithmetic: Gaussian rationals, dense and sparse matrices, sparse polynomials.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use matrix::{ExactMatrix, NullSpace};
pub use poly::{Coefficient, LinearForm, Monomial, MultiPoly, Poly, Var, VarEnv};
pub use scalar::{parse_rational, rat, rat_int, GaussianRational, Rational};
pub use sparse::SparseMatrix;
