//! Exact matrices, matrix power series and the closed-form star
//! exponentials of quadratic forms.

mod cayley;
mod closed_form;
mod flow;
mod riccati;
mod series;
mod square;

pub use cayley::{cayley, check_sp_pair, inverse_cayley, CayleyTransform, SpReport};
pub use closed_form::{closed_star_exponential, quadratic_form, StarExponential};
pub use flow::{cayley_residual, g_residual, mat_exp_series, q_residual, solve_g, solve_q};
pub use riccati::{riccati_1d, riccati_vs_moyal, RiccatiSolution};
pub use series::MatSeries;
pub use square::SqMatrix;
