//! Exact arithmetic: Gaussian rationals, Laurent polynomials in the formal
//! parameters, sparse multivariate polynomials and truncated power series.

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $m:ident, $f:path) => {
        impl<'a, 'b> std::ops::$tr<&'b $t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: &'b $t) -> $t {
                $f(self, rhs)
            }
        }
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $f(&self, &rhs)
            }
        }
        impl<'b> std::ops::$tr<&'b $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'b $t) -> $t {
                $f(&self, rhs)
            }
        }
        impl<'a> std::ops::$tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $f(self, &rhs)
            }
        }
    };
}

mod gaussian;
mod param;
mod parse;
mod poly;
mod series;

pub use gaussian::GaussianRational;
pub use param::{Param, ParamExponents, ParamScalar};
pub use parse::{parse_param_scalar, parse_poly, parse_scalar};
pub use poly::{Monomial, MultiPoly, PolyRepr, PolyTerm, TermCoef};
pub use series::TruncSeries;

/// Ring operations needed by [`TruncSeries`].
///
/// Named methods rather than operator traits so the same bound works for
/// scalars, polynomials and matrices (whose zero depends on a dimension).
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug {
    /// Additive identity of the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &GaussianRational) -> Self;
    /// Two-sided inverse when one exists in the coefficient ring.
    fn try_inverse(&self) -> Option<Self>;
}
