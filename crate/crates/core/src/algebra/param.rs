use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Coefficient, GaussianRational};
use crate::{Error, Result};

/// The formal parameters a scalar may carry.
///
/// `Mu` is invertible (Laurent), `Hbar` and `Tau` are ordinary power-series
/// parameters and may only appear with non-negative exponents.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    Mu,
    Hbar,
    Tau,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::Mu, Param::Hbar, Param::Tau];

    pub fn name(self) -> &'static str {
        match self {
            Param::Mu => "mu",
            Param::Hbar => "hbar",
            Param::Tau => "tau",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn is_invertible(self) -> bool {
        matches!(self, Param::Mu)
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector over [`Param::ALL`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ParamExponents([i32; 3]);

impl ParamExponents {
    pub fn new(exps: [i32; 3]) -> Result<Self> {
        for p in Param::ALL {
            if exps[p.index()] < 0 && !p.is_invertible() {
                return Err(Error::NonInvertibleParameter(p.name()));
            }
        }
        Ok(ParamExponents(exps))
    }

    pub fn of(p: Param, e: i32) -> Result<Self> {
        let mut exps = [0; 3];
        exps[p.index()] = e;
        Self::new(exps)
    }

    pub fn get(&self, p: Param) -> i32 {
        self.0[p.index()]
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == [0; 3]
    }

    fn with(&self, p: Param, e: i32) -> Self {
        let mut out = *self;
        out.0[p.index()] = e;
        out
    }

    fn combine(&self, other: &Self) -> Self {
        ParamExponents([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }
}

impl fmt::Display for ParamExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Param::ALL {
            let e = self.get(p);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", p.name())?;
            } else {
                write!(f, "{}^{}", p.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Finite Laurent combination of parameter monomials over the Gaussian
/// rationals, stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamScalar {
    terms: BTreeMap<ParamExponents, GaussianRational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar::default()
    }

    pub fn one() -> Self {
        Self::from(GaussianRational::one())
    }

    pub fn param(p: Param) -> Self {
        Self::monomial(ParamExponents::of(p, 1).expect("positive exponent"), GaussianRational::one())
    }

    pub fn mu() -> Self {
        Self::param(Param::Mu)
    }

    pub fn hbar() -> Self {
        Self::param(Param::Hbar)
    }

    pub fn tau() -> Self {
        Self::param(Param::Tau)
    }

    pub fn monomial(exps: ParamExponents, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        ParamScalar { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamExponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value when no parameter occurs.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_trivial().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamScalar { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Units of the Laurent ring: single terms whose parameters are all invertible.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv = ParamExponents::new([-e.0[0], -e.0[1], -e.0[2]]).ok()?;
        Some(Self::monomial(inv, c.inv().ok()?))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.try_inverse().ok_or_else(|| Error::NotInvertible(rhs.to_string()))?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let inv = self.try_inverse().ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        Ok(inv.pow(e.unsigned_abs()))
    }

    /// Replace parameter `p` by a number.
    pub fn substitute(&self, p: Param, value: &GaussianRational) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.get(p);
            if k < 0 && value.is_zero() {
                return Err(Error::ZeroSpecialization);
            }
            let factor = value.powi(k)?;
            out.accumulate(e.with(p, 0), c * &factor);
        }
        Ok(out)
    }

    /// Group terms by the exponent of `p`, removing `p` from each group.
    pub fn split_by(&self, p: Param) -> BTreeMap<i32, ParamScalar> {
        let mut out: BTreeMap<i32, ParamScalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.get(p)).or_default().accumulate(e.with(p, 0), c.clone());
        }
        out
    }

    /// Highest exponent of `p` over all terms (`None` for zero).
    pub fn max_exponent(&self, p: Param) -> Option<i32> {
        self.terms.keys().map(|e| e.get(p)).max()
    }

    pub(crate) fn accumulate(&mut self, e: ParamExponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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

    fn add_ref(a: &Self, b: &Self) -> Self {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }

    fn sub_ref(a: &Self, b: &Self) -> Self {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            out.accumulate(*e, -c);
        }
        out
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                out.accumulate(ea.combine(eb), ca * cb);
            }
        }
        out
    }
}

forward_binop!(ParamScalar, Add, add, ParamScalar::add_ref);
forward_binop!(ParamScalar, Sub, sub, ParamScalar::sub_ref);
forward_binop!(ParamScalar, Mul, mul, ParamScalar::mul_ref);

impl std::ops::Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl std::ops::Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl From<GaussianRational> for ParamScalar {
    fn from(c: GaussianRational) -> Self {
        Self::monomial(ParamExponents::default(), c)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::from(GaussianRational::from_integer(n))
    }
}

impl Coefficient for ParamScalar {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
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
        self.scale(c)
    }
    fn try_inverse(&self) -> Option<Self> {
        ParamScalar::try_inverse(self)
    }
}

/// `c*rest` with a unit coefficient omitted.
pub(crate) fn scaled_factor(c: &GaussianRational, rest: &str) -> String {
    if rest.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return rest.to_string();
    }
    if (-c).is_one() {
        return format!("-{rest}");
    }
    if !c.is_real() && !c.re().is_zero() {
        format!("({c})*{rest}")
    } else {
        format!("{c}*{rest}")
    }
}

/// Joins signed summands as `a + b - c`.
pub(crate) fn join_terms(f: &mut fmt::Formatter<'_>, pieces: impl Iterator<Item = String>) -> fmt::Result {
    let mut first = true;
    for piece in pieces {
        if first {
            write!(f, "{piece}")?;
        } else if let Some(rest) = piece.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {piece}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(f, self.terms.iter().rev().map(|(e, c)| scaled_factor(c, &e.to_string())))
    }
}

impl serde::Serialize for ParamScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ParamScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(ParamScalar::from(n)),
            Raw::Text(s) => super::parse_param_scalar(&s).map_err(serde::de::Error::custom),
        }
    }
}
