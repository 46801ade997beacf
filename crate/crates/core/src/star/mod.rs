//! Star products on polynomial algebras.

mod context;
mod exponential;
mod ordering;
mod product;

pub use context::{standard_j, OrderingK, StarContext};
pub use exponential::ode_star_exponential;
pub use ordering::{exp_linear_product, intertwine, ExpPrefactor, Side};
pub(crate) use product::contracted_terms;
pub use product::{star, star_commutator, star_k_ordered, star_terms};
