//! Homogeneous decomposition, μ-bookkeeping and the validators for the
//! hypotheses on `Λ`.

mod element;
mod validators;

pub use element::{decompose, degree_mu_table, h0_dim, specialize_mu, star_graded, GradedElement};
pub use validators::{check_jacobi, check_lambda_relation, monomials_up_to, poisson_bracket};
