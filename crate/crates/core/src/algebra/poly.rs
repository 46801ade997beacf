use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use super::param::{join_terms, scaled_factor};
use super::{Coefficient, GaussianRational, Param, ParamExponents, ParamScalar};
use crate::{Error, Result};

/// Exponent vector of a monomial in `z0, …, z(n-1)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `z0`, then `z1`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &[u32]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a >= b)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `nvars` commuting variables with [`ParamScalar`]
/// coefficients. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, ParamScalar::one())
    }

    pub fn constant(nvars: usize, c: ParamScalar) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn from_scalar(nvars: usize, c: GaussianRational) -> Self {
        Self::constant(nvars, ParamScalar::from(c))
    }

    /// The coordinate `z_j`; panics if `j >= nvars`.
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable z{j} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::monomial(Monomial(e), ParamScalar::one())
    }

    pub fn monomial(m: Monomial, c: ParamScalar) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ParamScalar)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, found: e.len() });
            }
            p.accumulate(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> ParamScalar {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn as_constant(&self) -> Option<ParamScalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_default())
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.accumulate(m.clone(), v * c);
        }
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect() }
    }

    pub fn map_coefficients<F>(&self, mut f: F) -> Result<MultiPoly>
    where
        F: FnMut(&ParamScalar) -> Result<ParamScalar>,
    {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in `z_j`.
    pub fn derivative(&self, j: usize) -> Result<MultiPoly> {
        if j >= self.nvars {
            return Err(Error::IndexOutOfRange { index: j, nvars: self.nvars });
        }
        let mut order = vec![0; self.nvars];
        order[j] = 1;
        Ok(self.derivative_multi(&order))
    }

    /// `∂^order` for a multi-index; panics on a length mismatch.
    pub fn derivative_multi(&self, order: &[u32]) -> MultiPoly {
        assert_eq!(order.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if !m.dominates(order) {
                continue;
            }
            let mut factor: i64 = 1;
            let mut e = Vec::with_capacity(self.nvars);
            for (&mi, &oi) in m.0.iter().zip(order) {
                for k in 0..oi {
                    factor *= i64::from(mi - k);
                }
                e.push(mi - oi);
            }
            out.accumulate(Monomial(e), c.scale(&GaussianRational::from_integer(factor)));
        }
        out
    }

    /// Whether `∂^order` of this polynomial is nonzero.
    pub fn survives_derivative(&self, order: &[u32]) -> bool {
        self.terms.keys().any(|m| m.dominates(order))
    }

    /// `f(z + offsets)`, fully expanded.
    pub fn shift(&self, offsets: &[ParamScalar]) -> Result<MultiPoly> {
        if offsets.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: offsets.len() });
        }
        let n = self.nvars;
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
        for (j, off) in offsets.iter().enumerate() {
            let max = self.terms.keys().map(|m| m.0[j]).max().unwrap_or(0);
            let base = &Self::var(n, j) + &Self::constant(n, off.clone());
            let mut row = vec![Self::one(n)];
            for k in 1..=max as usize {
                let next = &row[k - 1] * &base;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[j][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Replace a formal parameter by a number in every coefficient.
    pub fn substitute_param(&self, p: Param, value: &GaussianRational) -> Result<MultiPoly> {
        self.map_coefficients(|c| c.substitute(p, value))
    }

    pub(crate) fn accumulate(&mut self, m: Monomial, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(a: &Self, b: &Self) {
        assert_eq!(a.nvars, b.nvars, "polynomials over different variable counts");
    }

    fn add_ref(a: &Self, b: &Self) -> Self {
        Self::check_compatible(a, b);
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    fn sub_ref(a: &Self, b: &Self) -> Self {
        Self::check_compatible(a, b);
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        Self::check_compatible(a, b);
        let mut out = Self::zero(a.nvars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.accumulate(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// Flattened `(monomial, parameter exponents, number)` triples in
    /// canonical (descending graded-lex) order.
    fn flat_terms(&self) -> impl Iterator<Item = (&Monomial, &ParamExponents, &GaussianRational)> {
        self.terms.iter().rev().flat_map(|(m, c)| c.terms().rev().map(move |(e, v)| (m, e, v)))
    }
}

forward_binop!(MultiPoly, Add, add, MultiPoly::add_ref);
forward_binop!(MultiPoly, Sub, sub, MultiPoly::sub_ref);
forward_binop!(MultiPoly, Mul, mul, MultiPoly::mul_ref);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Coefficient for MultiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.scale_gaussian(c)
    }
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        Some(Self::constant(self.nvars, c.try_inverse()?))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(
            f,
            self.flat_terms().map(|(m, e, v)| {
                let rest = match (e.is_trivial(), m.degree() == 0) {
                    (true, true) => String::new(),
                    (false, true) => e.to_string(),
                    (true, false) => m.to_string(),
                    (false, false) => format!("{e}*{m}"),
                };
                scaled_factor(v, &rest)
            }),
        )
    }
}

/// Coefficient of one flattened term in the JSON polynomial format.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermCoef {
    #[serde(default)]
    pub params: BTreeMap<String, i32>,
    pub value: GaussianRational,
}

/// `{"exps": [...], "coef": {...}}`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub exps: Vec<u32>,
    pub coef: TermCoef,
}

/// A polynomial as it arrives in JSON: either the structured term list or
/// the human-readable string form. The variable count is supplied when
/// resolving, since neither form pins it down on its own.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyRepr {
    Terms(Vec<PolyTerm>),
    Text(String),
}

impl PolyRepr {
    pub fn resolve(&self, nvars: usize) -> Result<MultiPoly> {
        match self {
            PolyRepr::Text(s) => super::parse_poly(s, nvars),
            PolyRepr::Terms(terms) => {
                let mut p = MultiPoly::zero(nvars);
                for t in terms {
                    if t.exps.len() != nvars {
                        return Err(Error::Json(format!("term has {} exponents, expected {nvars}", t.exps.len())));
                    }
                    let mut exps = [0; 3];
                    for (name, &k) in &t.coef.params {
                        let p =
                            Param::from_name(name).ok_or_else(|| Error::Json(format!("unknown parameter `{name}`")))?;
                        exps[p as usize] = k;
                    }
                    let e = ParamExponents::new(exps)?;
                    p.accumulate(Monomial(t.exps.clone()), ParamScalar::monomial(e, t.coef.value.clone()));
                }
                Ok(p)
            }
        }
    }
}

impl From<&MultiPoly> for PolyRepr {
    fn from(p: &MultiPoly) -> Self {
        PolyRepr::Terms(
            p.flat_terms()
                .map(|(m, e, v)| PolyTerm {
                    exps: m.0.clone(),
                    coef: TermCoef {
                        params: Param::ALL
                            .into_iter()
                            .filter(|&q| e.get(q) != 0)
                            .map(|q| (q.name().to_string(), e.get(q)))
                            .collect(),
                        value: v.clone(),
                    },
                })
                .collect(),
        )
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr::from(self).serialize(s)
    }
}

impl MultiPoly {
    /// Parse either JSON form into a polynomial in `nvars` variables.
    pub fn from_json(value: &serde_json::Value, nvars: usize) -> Result<MultiPoly> {
        let repr: PolyRepr = serde_json::from_value(value.clone())?;
        repr.resolve(nvars)
    }
}

impl Zero for MultiPoly {
    /// Zero in no variables; prefer [`MultiPoly::zero`] with an explicit count.
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, j: usize) -> MultiPoly {
        MultiPoly::var(n, j)
    }

    fn num(n: usize, v: i64) -> MultiPoly {
        MultiPoly::from_scalar(n, GaussianRational::from_integer(v))
    }

    #[test]
    fn derivative_examples() {
        let f = &z(2, 0).pow(2) * &z(2, 1);
        assert_eq!(f.derivative(0).unwrap(), &num(2, 2) * &(&z(2, 0) * &z(2, 1)));
        assert!(z(2, 0).derivative(1).unwrap().is_zero());
        let mu = MultiPoly::constant(2, ParamScalar::mu());
        let g = &z(2, 0).pow(3) + &(&mu * &z(2, 0));
        assert_eq!(g.derivative(0).unwrap(), &(&num(2, 3) * &z(2, 0).pow(2)) + &mu);
        assert_eq!(g.derivative(2), Err(Error::IndexOutOfRange { index: 2, nvars: 2 }));
    }

    #[test]
    fn shift_examples() {
        let c = ParamScalar::mu();
        let zero = ParamScalar::zero();
        let cp = MultiPoly::constant(2, c.clone());
        assert_eq!(z(2, 0).shift(&[c.clone(), zero.clone()]).unwrap(), &z(2, 0) + &cp);
        let expected = &(&z(2, 0).pow(2) + &(&(&num(2, 2) * &cp) * &z(2, 0))) + &cp.pow(2);
        assert_eq!(z(2, 0).pow(2).shift(&[c.clone(), zero]).unwrap(), expected);

        let a = ParamScalar::from(GaussianRational::from_integer(3));
        let b = ParamScalar::hbar();
        let (ap, bp) = (MultiPoly::constant(2, a.clone()), MultiPoly::constant(2, b.clone()));
        let f = &z(2, 0) * &z(2, 1);
        let expected = &(&(&f + &(&bp * &z(2, 0))) + &(&ap * &z(2, 1))) + &(&ap * &bp);
        assert_eq!(f.shift(&[a, b]).unwrap(), expected);
        assert!(f.shift(&[ParamScalar::one()]).is_err());
    }

    #[test]
    fn grlex_display_order() {
        let f = &(&z(2, 1).pow(2) + &z(2, 0)) + &(&z(2, 0) * &z(2, 1));
        assert_eq!(f.to_string(), "z0*z1 + z1^2 + z0");
        let half_mu = ParamScalar::mu().scale(&GaussianRational::from_ratio(1, 2));
        let g = &(&z(2, 0) * &z(2, 1)) + &MultiPoly::constant(2, half_mu);
        assert_eq!(g.to_string(), "z0*z1 + 1/2*mu");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn json_form_flattens_parameter_terms() {
        let coef = &ParamScalar::one() + &ParamScalar::mu();
        let f = MultiPoly::monomial(Monomial::new(vec![1, 0]), coef);
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(MultiPoly::from_json(&v, 2).unwrap(), f);
        let bad = serde_json::json!([{"exps": [1], "coef": {"value": "1"}}]);
        assert!(MultiPoly::from_json(&bad, 2).is_err());
    }
}
