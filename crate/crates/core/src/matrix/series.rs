use num_traits::Zero;

use crate::algebra::{GaussianRational, TruncSeries};
use crate::Result;

use super::SqMatrix;

/// Matrix-valued power series in `t`, exact modulo `t^(N+1)`.
pub type MatSeries = TruncSeries<SqMatrix>;

impl TruncSeries<SqMatrix> {
    pub fn identity(dim: usize, order: usize) -> Self {
        TruncSeries::constant(SqMatrix::identity(dim), order)
    }

    pub fn dim(&self) -> usize {
        self.coeff(0).dim()
    }

    /// The scalar series in position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> TruncSeries<GaussianRational> {
        self.map(|m| m.get(i, j).clone())
    }

    pub fn trace(&self) -> TruncSeries<GaussianRational> {
        self.map(SqMatrix::trace)
    }

    pub fn transpose(&self) -> Self {
        self.map(SqMatrix::transpose)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs().iter().all(SqMatrix::is_symmetric)
    }

    /// `det M = det M(0) · exp ∫ tr(M⁻¹ M')`; requires `M(0)` invertible.
    pub fn det(&self) -> Result<TruncSeries<GaussianRational>> {
        let d0 = self.coeff(0).det();
        if d0.is_zero() {
            return Err(crate::Error::NonInvertibleLeadingCoefficient);
        }
        if self.order() == 0 {
            return Ok(TruncSeries::constant(d0, 0));
        }
        let inv = self.inverse()?.truncate(self.order() - 1);
        let log_derivative = inv.checked_mul(&self.derivative())?.trace();
        Ok(log_derivative.integrate().exp()?.scale(&d0))
    }
}
