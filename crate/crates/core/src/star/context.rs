use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, MultiPoly, Param, ParamScalar, PolyRepr};
use crate::matrix::SqMatrix;
use crate::{Error, Result};

/// The quantization datum: an antisymmetric matrix `Λ` of polynomials in
/// `n` variables and the scalar multiplying each contraction step.
///
/// The k-th term of the product carries `coupling^k / k!`; use
/// [`StarContext::mu_coupling`] (`μ/2`) for the projective setting and
/// [`StarContext::weyl_coupling`] (`iℏ/2`) for Weyl-algebra computations.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ContextJson", into = "ContextJson")]
pub struct StarContext {
    n: usize,
    lambda: Vec<MultiPoly>,
    coupling: ParamScalar,
    constant_lambda: bool,
}

impl StarContext {
    pub fn new(lambda: Vec<Vec<MultiPoly>>, coupling: ParamScalar) -> Result<Self> {
        let n = lambda.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in lambda {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for entry in row {
                if entry.nvars() != n {
                    return Err(Error::VariableCountMismatch { expected: n, found: entry.nvars() });
                }
                flat.push(entry);
            }
        }
        for i in 0..n {
            for j in 0..=i {
                if flat[i * n + j] != -&flat[j * n + i] {
                    return Err(Error::NotAntisymmetric("lambda"));
                }
            }
        }
        if coupling.is_zero() {
            return Err(Error::ZeroCoupling);
        }
        let constant_lambda = flat.iter().all(MultiPoly::is_constant);
        Ok(StarContext { n, lambda: flat, coupling, constant_lambda })
    }

    pub fn from_matrix(lambda: &SqMatrix, coupling: ParamScalar) -> Result<Self> {
        let n = lambda.dim();
        let rows = lambda
            .rows()
            .into_iter()
            .map(|row| row.into_iter().map(|x| MultiPoly::from_scalar(n, x)).collect())
            .collect();
        Self::new(rows, coupling)
    }

    /// `μ/2`
    pub fn mu_coupling() -> ParamScalar {
        ParamScalar::mu().scale(&GaussianRational::from_ratio(1, 2))
    }

    /// `iℏ/2`
    pub fn weyl_coupling() -> ParamScalar {
        ParamScalar::hbar().scale(&(GaussianRational::i() * GaussianRational::from_ratio(1, 2)))
    }

    /// Weyl algebra in `u = (u_1..u_m, v_1..v_m)`: `Λ = J = [[0, -I], [I, 0]]`
    /// with coupling `iℏ/2`, so that `[u_i, u_j] = iℏ J_ij`.
    pub fn weyl(m: usize) -> Self {
        Self::from_matrix(&standard_j(m), Self::weyl_coupling()).expect("J is antisymmetric")
    }

    /// Parse the JSON form, keeping malformed input ([`Error::Json`],
    /// [`Error::Parse`]) apart from invalid data such as an asymmetric `Λ`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ContextJson = serde_json::from_value(value.clone())?;
        raw.try_into()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self, i: usize, j: usize) -> &MultiPoly {
        &self.lambda[i * self.n + j]
    }

    pub(crate) fn lambda_entries(&self) -> &[MultiPoly] {
        &self.lambda
    }

    pub fn coupling(&self) -> &ParamScalar {
        &self.coupling
    }

    /// True iff every entry of `Λ` has degree 0.
    pub fn is_constant(&self) -> bool {
        self.constant_lambda
    }

    /// `Λ` as a number matrix, when every entry is a plain number.
    pub fn constant_matrix(&self) -> Option<SqMatrix> {
        if !self.constant_lambda {
            return None;
        }
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                row.push(self.lambda(i, j).as_constant()?.as_constant()?);
            }
            rows.push(row);
        }
        SqMatrix::from_rows(rows).ok()
    }

    pub fn with_coupling(&self, coupling: ParamScalar) -> Result<Self> {
        if coupling.is_zero() {
            return Err(Error::ZeroCoupling);
        }
        Ok(StarContext { coupling, ..self.clone() })
    }

    /// Parameters occurring in `Λ` or the coupling.
    pub fn params(&self) -> BTreeSet<Param> {
        let mut out = BTreeSet::new();
        let scalars = self.lambda.iter().flat_map(|p| p.terms().map(|(_, c)| c)).chain(std::iter::once(&self.coupling));
        for c in scalars {
            for (e, _) in c.terms() {
                out.extend(Param::ALL.into_iter().filter(|&p| e.get(p) != 0));
            }
        }
        out
    }
}

/// `[[0, -I], [I, 0]]` of size `2m`.
pub fn standard_j(m: usize) -> SqMatrix {
    SqMatrix::from_fn(2 * m, |i, j| {
        if i < m && j == i + m {
            GaussianRational::from_integer(-1)
        } else if i >= m && j + m == i {
            GaussianRational::from_integer(1)
        } else {
            GaussianRational::zero()
        }
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextJson {
    n: usize,
    lambda: Vec<Vec<PolyRepr>>,
    coupling: ParamScalar,
    #[serde(default)]
    params: Vec<String>,
}

impl TryFrom<ContextJson> for StarContext {
    type Error = Error;
    fn try_from(raw: ContextJson) -> Result<Self> {
        for name in &raw.params {
            if Param::from_name(name).is_none() {
                return Err(Error::Json(format!("unknown parameter `{name}`")));
            }
        }
        if raw.lambda.len() != raw.n {
            return Err(Error::DimensionMismatch { expected: raw.n, found: raw.lambda.len() });
        }
        let rows = raw
            .lambda
            .iter()
            .map(|row| row.iter().map(|p| p.resolve(raw.n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        StarContext::new(rows, raw.coupling)
    }
}

impl From<StarContext> for ContextJson {
    fn from(ctx: StarContext) -> Self {
        let n = ctx.n;
        ContextJson {
            n,
            lambda: (0..n).map(|i| (0..n).map(|j| PolyRepr::from(ctx.lambda(i, j))).collect()).collect(),
            params: ctx.params().into_iter().map(|p| p.name().to_string()).collect(),
            coupling: ctx.coupling,
        }
    }
}

/// Constant symmetric matrix `K` selecting an ordering of the Weyl algebra.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "SqMatrix", into = "SqMatrix")]
pub struct OrderingK {
    k: SqMatrix,
}

impl OrderingK {
    pub fn new(k: SqMatrix) -> Result<Self> {
        if !k.is_symmetric() {
            return Err(Error::NotSymmetric("ordering matrix K"));
        }
        Ok(OrderingK { k })
    }

    /// `K = 0`: Weyl (symmetric) ordering.
    pub fn weyl(m: usize) -> Self {
        OrderingK { k: SqMatrix::zero(2 * m) }
    }

    /// `K = K₀ = [[0, I], [I, 0]]`: normal (ΨDO) ordering.
    pub fn normal(m: usize) -> Self {
        OrderingK { k: k0(m) }
    }

    /// `K = -K₀`: anti-normal ordering.
    pub fn anti_normal(m: usize) -> Self {
        OrderingK { k: -k0(m) }
    }

    pub fn matrix(&self) -> &SqMatrix {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    pub fn neg(&self) -> Self {
        OrderingK { k: -&self.k }
    }
}

fn k0(m: usize) -> SqMatrix {
    SqMatrix::from_fn(2 * m, |i, j| {
        if (i < m && j == i + m) || (i >= m && j + m == i) {
            GaussianRational::from_integer(1)
        } else {
            GaussianRational::zero()
        }
    })
}

impl TryFrom<SqMatrix> for OrderingK {
    type Error = Error;
    fn try_from(k: SqMatrix) -> Result<Self> {
        OrderingK::new(k)
    }
}

impl From<OrderingK> for SqMatrix {
    fn from(k: OrderingK) -> Self {
        k.k
    }
}
