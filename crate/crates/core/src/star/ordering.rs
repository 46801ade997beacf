use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, MultiPoly, ParamScalar};
use crate::{Error, Result};

use super::{OrderingK, StarContext};

/// `exp((coupling/2) Σ K_ij ∂_i ∂_j) f`.
///
/// With the Weyl coupling `iℏ/2` this is `e^{(iℏ/4) Σ K_ij ∂_i ∂_j}`, the map
/// taking Weyl-ordered symbols to `K`-ordered ones. The series terminates
/// because every application lowers the degree by two.
pub fn intertwine(k: &OrderingK, f: &MultiPoly, coupling: &ParamScalar) -> Result<MultiPoly> {
    let n = f.nvars();
    if k.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
    }
    let half = coupling.scale(&GaussianRational::from_ratio(1, 2));
    let mut out = f.clone();
    let mut current = f.clone();
    for step in 1.. {
        current = laplacian(k, &current)?.scale(&half).scale_gaussian(&GaussianRational::from_ratio(1, step));
        if current.is_zero() {
            break;
        }
        out = &out + &current;
    }
    Ok(out)
}

/// `Σ K_ij ∂_i ∂_j f`
fn laplacian(k: &OrderingK, f: &MultiPoly) -> Result<MultiPoly> {
    let n = f.nvars();
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        let di = f.derivative(i)?;
        if di.is_zero() {
            continue;
        }
        for j in 0..n {
            let kij = k.matrix().get(i, j);
            if num_traits::Zero::is_zero(kij) {
                continue;
            }
            out = &out + &di.derivative(j)?.scale_gaussian(kij);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Symbolic exponential `exp(sign · scale · ⟨covector, u⟩ / (2·coupling))`.
/// For the Weyl coupling `2·coupling = iℏ`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ExpPrefactor {
    pub covector: Vec<GaussianRational>,
    pub scale: ParamScalar,
    pub sign: i8,
    pub coupling: ParamScalar,
}

impl ExpPrefactor {
    /// The exponent `sign · scale · ⟨covector, u⟩ / (2·coupling)` as a linear
    /// polynomial.
    pub fn exponent(&self) -> Result<MultiPoly> {
        let n = self.covector.len();
        let denom = self.coupling.scale(&GaussianRational::from_integer(2));
        let factor = self.scale.checked_div(&denom)?.scale(&GaussianRational::from_integer(self.sign.into()));
        let mut lin = MultiPoly::zero(n);
        for (j, a) in self.covector.iter().enumerate() {
            lin = &lin + &MultiPoly::var(n, j).scale_gaussian(a);
        }
        Ok(lin.scale(&factor))
    }
}

/// Product of `f` with the exponential of a linear form in the `K`-ordered
/// product `⋆_{Λ+K}`:
///
/// * left: `e^{s⟨a,u⟩/(2c)} ⋆ f = e^{s⟨a,u⟩/(2c)} · f(u + (s/2)·a(K+Λ))`
/// * right: `f ⋆ e^{-s⟨a,u⟩/(2c)} = e^{-s⟨a,u⟩/(2c)} · f(u + (s/2)·a(-K+Λ))`
///
/// where `c` is the coupling and `(aM)_j = Σ_i a_i M_ij`. The exponential is
/// returned as a descriptor and never expanded.
pub fn exp_linear_product(
    ctx: &StarContext,
    k: &OrderingK,
    a: &[GaussianRational],
    s: &ParamScalar,
    f: &MultiPoly,
    side: Side,
) -> Result<(ExpPrefactor, MultiPoly)> {
    let lambda = ctx.constant_matrix().ok_or(Error::NonConstantLambda)?;
    let n = ctx.n();
    if a.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: a.len() });
    }
    if k.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
    }
    let (m, sign) = match side {
        Side::Left => (k.matrix() + &lambda, 1),
        Side::Right => (&lambda - k.matrix(), -1),
    };
    let half_s = s.scale(&GaussianRational::from_ratio(1, 2));
    let offsets: Vec<ParamScalar> = (0..n)
        .map(|j| {
            let aj = (0..n).fold(GaussianRational::from_integer(0), |acc, i| acc + &a[i] * m.get(i, j));
            half_s.scale(&aj)
        })
        .collect();
    let shifted = f.shift(&offsets)?;
    let prefactor = ExpPrefactor { covector: a.to_vec(), scale: s.clone(), sign, coupling: ctx.coupling().clone() };
    Ok((prefactor, shifted))
}
