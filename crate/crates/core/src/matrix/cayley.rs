use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::{MatSeries, SqMatrix};

/// `X ↦ (1 − X)(1 + X)⁻¹`, defined when `det(1 + X) ≠ 0`.
///
/// The map is an involution, so the inverse transform is the same formula.
pub trait CayleyTransform: Sized {
    fn cayley(&self) -> Result<Self>;

    fn inverse_cayley(&self) -> Result<Self> {
        self.cayley()
    }
}

impl CayleyTransform for SqMatrix {
    fn cayley(&self) -> Result<Self> {
        let one = SqMatrix::identity(self.dim());
        let inv = (&one + self).inverse().map_err(|_| Error::SingularCayley)?;
        Ok(&(&one - self) * &inv)
    }
}

impl CayleyTransform for MatSeries {
    fn cayley(&self) -> Result<Self> {
        let one = MatSeries::identity(self.dim(), self.order());
        let inv = one.checked_add(self)?.inverse().map_err(|_| Error::SingularCayley)?;
        one.checked_sub(self)?.checked_mul(&inv)
    }
}

pub fn cayley<T: CayleyTransform>(x: &T) -> Result<T> {
    x.cayley()
}

pub fn inverse_cayley<T: CayleyTransform>(g: &T) -> Result<T> {
    g.inverse_cayley()
}

/// Whether `ΛX` is symmetric (`X ∈ sp_Λ`) and whether `ᵗC(X) Λ C(X) = Λ`
/// (`C(X) ∈ Sp_Λ`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpReport {
    pub lambda_x_symmetric: bool,
    pub cayley_preserves_lambda: bool,
}

pub fn check_sp_pair(lambda: &SqMatrix, x: &SqMatrix) -> Result<SpReport> {
    if !lambda.is_antisymmetric() {
        return Err(Error::NotAntisymmetric("lambda"));
    }
    if !lambda.is_invertible() {
        return Err(Error::Singular("lambda"));
    }
    if x.dim() != lambda.dim() {
        return Err(Error::DimensionMismatch { expected: lambda.dim(), found: x.dim() });
    }
    let c = x.cayley()?;
    Ok(SpReport {
        lambda_x_symmetric: (lambda * x).is_symmetric(),
        cayley_preserves_lambda: &(&c.transpose() * lambda) * &c == *lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_example() {
        let x = SqMatrix::from_integers(&[[0, 1], [0, 0]]);
        let c = SqMatrix::from_integers(&[[1, -2], [0, 1]]);
        assert_eq!(cayley(&x).unwrap(), c);
        assert_eq!(inverse_cayley(&c).unwrap(), x);
        assert_eq!(cayley(&SqMatrix::zero(3)).unwrap(), SqMatrix::identity(3));
        assert!(inverse_cayley(&SqMatrix::identity(2)).unwrap().is_zero());
        assert_eq!(cayley(&-SqMatrix::identity(2)), Err(Error::SingularCayley));
    }

    #[test]
    fn sp_pairs() {
        let lambda = SqMatrix::from_integers(&[[0, 1], [-1, 0]]);
        let zero = check_sp_pair(&lambda, &SqMatrix::zero(2)).unwrap();
        assert!(zero.lambda_x_symmetric && zero.cayley_preserves_lambda);
        let s = SqMatrix::from_integers(&[[2, 1], [1, 3]]);
        let good = check_sp_pair(&lambda, &(&lambda * &s)).unwrap();
        assert!(good.lambda_x_symmetric && good.cayley_preserves_lambda);
        let bad = check_sp_pair(&lambda, &SqMatrix::identity(2)).unwrap();
        assert!(!bad.lambda_x_symmetric);
        assert!(check_sp_pair(&SqMatrix::zero(2), &s).is_err());
    }
}
