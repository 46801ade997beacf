//! Exact computer algebra for Moyal-type star products on polynomial
//! algebras: the contracted star product and its ordered variants, closed
//! form star exponentials of quadratic forms through the Cayley transform,
//! and the grading and validation layer over homogeneous coordinates.

#[macro_use]
pub mod algebra;
mod error;
pub mod graded;
pub mod matrix;
pub mod random;
pub mod report;
pub mod star;

pub use algebra::{Coefficient, GaussianRational, Monomial, MultiPoly, Param, ParamScalar, TruncSeries};
pub use error::{Error, Result};
pub use matrix::{MatSeries, SqMatrix};
pub use report::Report;
pub use star::{OrderingK, StarContext};
