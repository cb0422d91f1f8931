//! Exact scalars, sparse polynomials and weighted gradings.

pub mod linalg;
pub mod parse;
pub mod poly;
pub mod scalar;
mod upoly;
pub mod weights;

pub use linalg::Matrix;
pub use parse::{parse_poly, parse_scalar};
pub use poly::{format_monomial, ExtDegree, Monomial, Poly, Vars};
pub use scalar::{totient, Scalar};
pub use weights::{NormalizedOrder, WeightSystem};
