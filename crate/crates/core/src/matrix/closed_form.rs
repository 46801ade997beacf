use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, MultiPoly, ParamScalar, TruncSeries};
use crate::{Error, Result};

use super::{solve_g, solve_q, MatSeries, SqMatrix};

/// `A[Z] = Σ A_ij z_i z_j`
pub fn quadratic_form(a: &SqMatrix) -> MultiPoly {
    let n = a.dim();
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            let aij = a.get(i, j);
            if !num_traits::Zero::is_zero(aij) {
                out = &out + &(&MultiPoly::var(n, i) * &MultiPoly::var(n, j)).scale_gaussian(aij);
            }
        }
    }
    out
}

/// `amplitude(t) · exp((1/μ) phase(t)[Z])`, the star exponential of
/// `(1/μ) A[Z]` for the product with coupling `μ/2`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct StarExponential {
    pub amplitude: TruncSeries<GaussianRational>,
    pub phase: MatSeries,
}

/// Closed form of `e_⋆^{t A[Z]/μ}` for constant invertible `Λ`:
///
/// * amplitude `det^{−1/2}((e^{tΛA} + e^{−tΛA})/2)`
/// * phase `Q(t) = Λ⁻¹ tanh(tΛA)`, computed as `Λ⁻¹ C⁻¹(e^{−2tΛA})`.
///
/// `tanh(x)` and `−i tan(i x)` agree as formal series, so this is the same
/// object as `(Λ⁻¹/i) tan(iΛA)`.
pub fn closed_star_exponential(lambda: &SqMatrix, a: &SqMatrix, order: usize) -> Result<StarExponential> {
    if !lambda.is_antisymmetric() {
        return Err(Error::NotAntisymmetric("lambda"));
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric("A"));
    }
    if a.dim() != lambda.dim() {
        return Err(Error::DimensionMismatch { expected: lambda.dim(), found: a.dim() });
    }
    let lambda_inv = lambda.inverse().map_err(|_| Error::Singular("lambda"))?;
    let la = lambda * a;
    let zero = SqMatrix::zero(a.dim());
    let q = solve_q(&la, &zero, order)?;
    let amplitude = solve_g(&la, &zero, order)?;
    Ok(StarExponential { amplitude, phase: q.left_mul(&lambda_inv) })
}

impl StarExponential {
    pub fn order(&self) -> usize {
        self.amplitude.order()
    }

    pub fn dim(&self) -> usize {
        self.phase.dim()
    }

    /// The full object as a polynomial series in `t`.
    pub fn expand(&self) -> Result<TruncSeries<MultiPoly>> {
        let n = self.dim();
        let inv_mu = ParamScalar::mu().try_inverse().expect("mu is invertible");
        let exponent = self.phase.map(|q| quadratic_form(q).scale(&inv_mu));
        let amplitude = self.amplitude.map(|c| MultiPoly::from_scalar(n, c.clone()));
        amplitude.checked_mul(&exponent.exp()?)
    }
}
