use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, MultiPoly, ParamScalar, TruncSeries};
use crate::report::Report;
use crate::star::{ode_star_exponential, StarContext};
use crate::Result;

/// `h(t) = tan(ℏ√D t)/(ℏ√D)` and `g(t) = sec(ℏ√D t)` as series whose
/// coefficients are polynomials in `ε = ℏ²D`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RiccatiSolution {
    pub discriminant: GaussianRational,
    pub g: TruncSeries<ParamScalar>,
    pub h: TruncSeries<ParamScalar>,
}

/// Solve `h' = 1 + ℏ²D h²`, `g' = ℏ²D g h`, `h(0) = 0`, `g(0) = 1` with
/// `D = c² − ab`, one coefficient at a time.
pub fn riccati_1d(a: &GaussianRational, b: &GaussianRational, c: &GaussianRational, order: usize) -> RiccatiSolution {
    let d = c * c - a * b;
    let eps = ParamScalar::hbar().pow(2).scale(&d);
    let mut h = vec![ParamScalar::zero()];
    let mut g = vec![ParamScalar::one()];
    for k in 0..order {
        let inv = GaussianRational::from_ratio(1, k as i64 + 1);
        let mut hh = ParamScalar::zero();
        let mut gh = ParamScalar::zero();
        for j in 0..=k {
            hh = &hh + &(&h[j] * &h[k - j]);
            gh = &gh + &(&g[j] * &h[k - j]);
        }
        let mut dh = &eps * &hh;
        if k == 0 {
            dh = &dh + &ParamScalar::one();
        }
        h.push(dh.scale(&inv));
        g.push((&eps * &gh).scale(&inv));
    }
    RiccatiSolution { discriminant: d, g: TruncSeries::new(g), h: TruncSeries::new(h) }
}

impl RiccatiSolution {
    /// `g(t) · exp(h(t) · x)` for a polynomial `x`.
    pub fn apply(&self, x: &MultiPoly) -> Result<TruncSeries<MultiPoly>> {
        let n = x.nvars();
        let g = self.g.map(|c| MultiPoly::constant(n, c.clone()));
        let hx = self.h.map(|c| x.scale(c));
        g.checked_mul(&hx.exp()?)
    }
}

/// Compare `g(t) e^{h(t)(au² + bv² + 2cuv)}` with the Weyl star exponential
/// of `au² + bv² + 2cuv` (coupling `iℏ/2`, `Λ = J`).
pub fn riccati_vs_moyal(
    a: &GaussianRational,
    b: &GaussianRational,
    c: &GaussianRational,
    order: usize,
) -> Result<Report> {
    let u = MultiPoly::var(2, 0);
    let v = MultiPoly::var(2, 1);
    let x = &(&u.pow(2).scale_gaussian(a) + &v.pow(2).scale_gaussian(b)) + &(&u * &v).scale_gaussian(&(c + c));
    let lhs = riccati_1d(a, b, c, order).apply(&x)?;
    let rhs = ode_star_exponential(&StarContext::weyl(1), &x, order)?;
    let report = Report::compare(&lhs, &rhs)?;
    if report.pass {
        return Ok(report);
    }
    let witness =
        BTreeMap::from([("a".into(), a.to_string()), ("b".into(), b.to_string()), ("c".into(), c.to_string())]);
    Ok(report.with_witness(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> GaussianRational {
        GaussianRational::from_integer(v)
    }

    #[test]
    fn degenerate_discriminant() {
        let s = riccati_1d(&int(0), &int(0), &int(0), 6);
        assert_eq!(s.h, TruncSeries::monomial(ParamScalar::one(), 1, 6));
        assert_eq!(s.g, TruncSeries::constant(ParamScalar::one(), 6));
        let s = riccati_1d(&int(1), &int(1), &int(1), 4);
        assert_eq!(s.discriminant, int(0));
    }

    #[test]
    fn tangent_and_secant() {
        let s = riccati_1d(&int(0), &int(0), &int(1), 5);
        let h2 = ParamScalar::hbar().pow(2);
        let h4 = ParamScalar::hbar().pow(4);
        assert_eq!(s.h.coeff(3), &h2.scale(&GaussianRational::from_ratio(1, 3)));
        assert_eq!(s.h.coeff(5), &h4.scale(&GaussianRational::from_ratio(2, 15)));
        assert_eq!(s.g.coeff(2), &h2.scale(&GaussianRational::from_ratio(1, 2)));
        assert_eq!(s.g.coeff(4), &h4.scale(&GaussianRational::from_ratio(5, 24)));
    }

    #[test]
    fn matches_weyl_oracle() {
        for (a, b, c) in [(0, 0, 0), (0, 0, 1), (1, 1, 0)] {
            let r = riccati_vs_moyal(&int(a), &int(b), &int(c), 6).unwrap();
            assert!(r.pass, "({a},{b},{c}) diverges at {:?}", r.first_divergence_order);
        }
    }
}
