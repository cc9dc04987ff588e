//! Exact arithmetic over `F_p` and ℚ: dense matrices with rank, kernels,
//! cokernels and linear solves, plus univariate polynomials.

mod field;
mod matrix;
pub mod poly;

pub use field::{is_prime, Field, Scalar, MAX_PRIME};
pub(crate) use field::parse_rational;
pub use matrix::Matrix;
pub use poly::{charpoly, Poly};
