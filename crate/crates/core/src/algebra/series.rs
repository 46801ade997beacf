use serde::{Deserialize, Serialize};

use super::{Coefficient, GaussianRational};
use crate::{Error, Result};

/// Power series `Σ c_k t^k` known exactly modulo `t^(N+1)`.
///
/// The truncation order travels with the value; binary operations insist on
/// equal orders instead of silently truncating the longer operand.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct TruncSeries<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Coefficient> TruncSeries<R> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    /// Panics on an empty vector.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least the t^0 coefficient");
        TruncSeries { order: coeffs.len() - 1, coeffs }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        TruncSeries { order, coeffs }
    }

    /// `c·t^k` (zero when `k > order`).
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        TruncSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::vanishes)
    }

    /// Lowest `k` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.vanishes())
    }

    pub fn map<S: Coefficient, F: FnMut(&R) -> S>(&self, f: F) -> TruncSeries<S> {
        TruncSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch { left: self.order, right: rhs.order });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    /// Truncated Cauchy product; factor order is preserved, so this is also
    /// correct for non-commutative coefficients.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let mut coeffs = Vec::with_capacity(self.order + 1);
        for k in 0..=self.order {
            let mut acc = self.coeffs[0].zero_like();
            for j in 0..=k {
                if self.coeffs[j].vanishes() || rhs.coeffs[k - j].vanishes() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[j].times(&rhs.coeffs[k - j]));
            }
            coeffs.push(acc);
        }
        Ok(TruncSeries { order: self.order, coeffs })
    }

    pub fn neg(&self) -> Self {
        self.map(Coefficient::negated)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Multiply every coefficient by `c` on the left.
    pub fn left_mul(&self, c: &R) -> Self {
        self.map(|x| c.times(x))
    }

    /// Multiply every coefficient by `c` on the right.
    pub fn right_mul(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    /// `d/dt`; the result is known modulo `t^N`, so its order drops by one
    /// (order 0 stays 0 with a zero coefficient).
    pub fn derivative(&self) -> Self {
        if self.order == 0 {
            return TruncSeries { order: 0, coeffs: vec![self.coeffs[0].zero_like()] };
        }
        let coeffs =
            (1..=self.order).map(|k| self.coeffs[k].scaled(&GaussianRational::from_integer(k as i64))).collect();
        TruncSeries { order: self.order - 1, coeffs }
    }

    /// `∫_0^t`; the order grows by one and the constant term is zero.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order + 2);
        coeffs.push(self.coeffs[0].zero_like());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scaled(&GaussianRational::from_ratio(1, k as i64 + 1)));
        }
        TruncSeries { order: self.order + 1, coeffs }
    }

    /// Drop every coefficient above `order`; panics if `order > self.order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        TruncSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Multiplicative inverse; the `t^0` coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let lead_inv = self.coeffs[0].try_inverse().ok_or(Error::NonInvertibleLeadingCoefficient)?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(lead_inv.clone());
        for k in 1..=self.order {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                if self.coeffs[j].vanishes() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[j].times(&out[k - j]));
            }
            out.push(lead_inv.times(&acc).negated());
        }
        Ok(TruncSeries { order: self.order, coeffs: out })
    }

    /// `s^(-1/2)` normalized to constant term 1; requires `s(0) = 1`.
    /// Assumes commuting coefficients.
    pub fn inv_sqrt(&self) -> Result<Self> {
        let one = self.coeffs[0].one_like();
        if self.coeffs[0] != one {
            return Err(Error::LeadingCoefficientNotOne);
        }
        let w = self.inverse()?;
        let half = GaussianRational::from_ratio(1, 2);
        let mut r: Vec<R> = Vec::with_capacity(self.order + 1);
        r.push(one);
        for k in 1..=self.order {
            let mut acc = w.coeffs[k].clone();
            for j in 1..k {
                acc = acc.minus(&r[j].times(&r[k - j]));
            }
            r.push(acc.scaled(&half));
        }
        Ok(TruncSeries { order: self.order, coeffs: r })
    }

    /// `Σ s^k / k!`; requires `s(0) = 0`. Assumes commuting coefficients.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            return Err(Error::NonZeroConstantTerm);
        }
        // E' = s'E  ⇒  k E_k = Σ_{j=1..k} j s_j E_{k-j}
        let mut e: Vec<R> = Vec::with_capacity(self.order + 1);
        e.push(self.coeffs[0].one_like());
        for k in 1..=self.order {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                if self.coeffs[j].vanishes() {
                    continue;
                }
                let term = self.coeffs[j].times(&e[k - j]).scaled(&GaussianRational::from_integer(j as i64));
                acc = acc.plus(&term);
            }
            e.push(acc.scaled(&GaussianRational::from_ratio(1, k as i64)));
        }
        Ok(TruncSeries { order: self.order, coeffs: e })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MultiPoly, ParamScalar};
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    fn scalar_series(v: &[(i64, i64)], order: usize) -> TruncSeries<GaussianRational> {
        let mut c = vec![GaussianRational::zero(); order + 1];
        for (k, &(n, d)) in v.iter().enumerate() {
            c[k] = q(n, d);
        }
        TruncSeries::new(c)
    }

    #[test]
    fn geometric_inverse() {
        let s = scalar_series(&[(1, 1), (1, 1)], 6);
        let inv = s.inverse().unwrap();
        for k in 0..=6 {
            assert_eq!(inv.coeff(k), &q(if k % 2 == 0 { 1 } else { -1 }, 1));
        }
        assert_eq!(TruncSeries::constant(q(2, 1), 3).inverse().unwrap(), TruncSeries::constant(q(1, 2), 3));
        assert_eq!(
            TruncSeries::constant(GaussianRational::one(), 3).inverse().unwrap(),
            TruncSeries::constant(q(1, 1), 3)
        );
        assert_eq!(scalar_series(&[(0, 1), (1, 1)], 3).inverse(), Err(Error::NonInvertibleLeadingCoefficient));
    }

    #[test]
    fn binomial_inverse_square_root() {
        // (1+2t)^(-1/2) = 1 - t + 3/2 t^2 - 5/2 t^3 + 35/8 t^4 - ...
        let s = scalar_series(&[(1, 1), (2, 1)], 4);
        let r = s.inv_sqrt().unwrap();
        let expected = scalar_series(&[(1, 1), (-1, 1), (3, 2), (-5, 2), (35, 8)], 4);
        assert_eq!(r, expected);
        let check = r.checked_mul(&r).unwrap().checked_mul(&s).unwrap();
        assert_eq!(check, TruncSeries::constant(GaussianRational::one(), 4));
        assert_eq!(scalar_series(&[(2, 1)], 2).inv_sqrt(), Err(Error::LeadingCoefficientNotOne));
    }

    #[test]
    fn polynomial_exponential() {
        let z = MultiPoly::var(1, 0);
        let s = TruncSeries::monomial(z.clone(), 1, 4);
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(2), &z.pow(2).scale_gaussian(&q(1, 2)));
        assert_eq!(e.coeff(4), &z.pow(4).scale_gaussian(&q(1, 24)));
        let prod = e.checked_mul(&s.neg().exp().unwrap()).unwrap();
        assert_eq!(prod, TruncSeries::constant(MultiPoly::one(1), 4));
        let bad = TruncSeries::constant(MultiPoly::one(1), 2);
        assert_eq!(bad.exp(), Err(Error::NonZeroConstantTerm));
        let zero = TruncSeries::constant(MultiPoly::zero(1), 3);
        assert_eq!(zero.exp().unwrap(), TruncSeries::constant(MultiPoly::one(1), 3));
    }

    #[test]
    fn orders_must_agree() {
        let a = TruncSeries::constant(ParamScalar::one(), 2);
        let b = TruncSeries::constant(ParamScalar::one(), 3);
        assert_eq!(a.checked_add(&b), Err(Error::OrderMismatch { left: 2, right: 3 }));
        assert!(a.checked_mul(&b).is_err());
    }
}
