use crate::algebra::{GaussianRational, MultiPoly, TruncSeries};
use crate::{Error, Result};

use super::{star, StarContext};

/// The star exponential `F = Σ F_k t^k` of `H` by term-by-term recursion:
/// `F_0 = 1`, `F_{k+1} = (H ⋆ F_k)/(k+1)`, i.e. the unique series solution of
/// `∂_t F = H ⋆ F`, `F(0) = 1`.
pub fn ode_star_exponential(ctx: &StarContext, h: &MultiPoly, order: usize) -> Result<TruncSeries<MultiPoly>> {
    if h.nvars() != ctx.n() {
        return Err(Error::VariableCountMismatch { expected: ctx.n(), found: h.nvars() });
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(MultiPoly::one(ctx.n()));
    for k in 0..order {
        let next = star(ctx, h, &coeffs[k])?.scale_gaussian(&GaussianRational::from_ratio(1, k as i64 + 1));
        coeffs.push(next);
    }
    Ok(TruncSeries::new(coeffs))
}
