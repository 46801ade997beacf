use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{GaussianRational, MultiPoly, Param, ParamExponents, ParamScalar, PolyRepr};
use crate::star::{star, StarContext};
use crate::{Error, Result};

/// A polynomial split by total `Z`-degree and by the exponent of `μ`.
///
/// Component `(k, w)` is homogeneous of degree `k` and stands for
/// `μ^w · poly`; `poly` itself carries no `μ`.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedElement {
    nvars: usize,
    components: BTreeMap<(u32, i32), MultiPoly>,
}

impl GradedElement {
    pub fn empty(nvars: usize) -> Self {
        GradedElement { nvars, components: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// `(degree, μ-weight, poly)` in ascending key order.
    pub fn components(&self) -> impl Iterator<Item = (u32, i32, &MultiPoly)> {
        self.components.iter().map(|(&(d, w), p)| (d, w, p))
    }

    pub fn component(&self, degree: u32, mu: i32) -> Option<&MultiPoly> {
        self.components.get(&(degree, mu))
    }

    /// The set of `(degree, μ-weight)` keys.
    pub fn keys(&self) -> Vec<(u32, i32)> {
        self.components.keys().copied().collect()
    }

    /// Build from explicit components; each must be homogeneous of its
    /// degree and free of `μ`.
    pub fn from_components<I>(nvars: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, i32, MultiPoly)>,
    {
        let mut out = Self::empty(nvars);
        for (d, w, p) in parts {
            if p.nvars() != nvars {
                return Err(Error::VariableCountMismatch { expected: nvars, found: p.nvars() });
            }
            if p.terms().any(|(m, c)| m.degree() != d || c.terms().any(|(e, _)| e.get(Param::Mu) != 0)) {
                return Err(Error::Json(format!("component ({d}, {w}) is not homogeneous and mu-free")));
            }
            out.insert(d, w, p);
        }
        Ok(out)
    }

    fn insert(&mut self, d: u32, w: i32, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.components.remove(&(d, w));
        let sum = match entry {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.components.insert((d, w), sum);
        }
    }

    /// `Σ μ^w · poly`
    pub fn reassemble(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (&(_, w), p) in &self.components {
            out = &out + &p.scale(&mu_power(w));
        }
        out
    }
}

fn mu_power(w: i32) -> ParamScalar {
    ParamScalar::monomial(
        ParamExponents::of(Param::Mu, w).expect("mu is invertible"),
        GaussianRational::from_integer(1),
    )
}

/// Split `f` by total degree and `μ`-exponent.
pub fn decompose(f: &MultiPoly) -> GradedElement {
    let n = f.nvars();
    let mut out = GradedElement::empty(n);
    for (m, c) in f.terms() {
        for (w, rest) in c.split_by(Param::Mu) {
            out.insert(m.degree(), w, MultiPoly::monomial(m.clone(), rest));
        }
    }
    out
}

/// `(degree, μ-exponent)` pairs occurring in `f`, ascending.
pub fn degree_mu_table(f: &MultiPoly) -> Vec<(u32, i32)> {
    decompose(f).keys()
}

/// `dim H⁰(ℙⁿ, 𝒪(m))`: the number of degree-`m` monomials in `n + 1`
/// variables, zero for `m < 0`.
pub fn h0_dim(n: u32, m: i64) -> u128 {
    if m < 0 {
        return 0;
    }
    let m = m as u128;
    let mut acc: u128 = 1;
    for i in 1..=u128::from(n) {
        acc = acc * (m + i) / i;
    }
    acc
}

/// Substitute `μ ↦ value`.
pub fn specialize_mu(f: &MultiPoly, value: &GaussianRational) -> Result<MultiPoly> {
    if num_traits::Zero::is_zero(value) {
        return Err(Error::ZeroSpecialization);
    }
    f.substitute_param(Param::Mu, value)
}

/// Star product of graded elements, component by component; requires a
/// constant `Λ`.
pub fn star_graded(ctx: &StarContext, f: &GradedElement, g: &GradedElement) -> Result<GradedElement> {
    if !ctx.is_constant() {
        return Err(Error::NonConstantLambda);
    }
    let mut out = GradedElement::empty(ctx.n());
    for (&(_, wf), pf) in &f.components {
        for (&(_, wg), pg) in &g.components {
            let prod = star(ctx, pf, pg)?;
            for (d, w, p) in decompose(&prod).components() {
                out.insert(d, w + wf + wg, p.clone());
            }
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    degree: u32,
    mu: i32,
    poly: PolyRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradedJson {
    n: usize,
    components: Vec<ComponentJson>,
}

impl Serialize for GradedElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GradedJson {
            n: self.nvars,
            components: self
                .components()
                .map(|(degree, mu, p)| ComponentJson { degree, mu, poly: PolyRepr::from(p) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GradedJson::deserialize(d)?;
        let parts = raw
            .components
            .into_iter()
            .map(|c| Ok((c.degree, c.mu, c.poly.resolve(raw.n)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        GradedElement::from_components(raw.n, parts).map_err(serde::de::Error::custom)
    }
}
