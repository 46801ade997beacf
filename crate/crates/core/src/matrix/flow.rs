use crate::algebra::{Coefficient, GaussianRational, TruncSeries};
use crate::{Error, Result};

use super::{CayleyTransform, MatSeries, SqMatrix};

/// `exp(scale · a · t)` as a series of order `order`.
pub fn mat_exp_series(a: &SqMatrix, scale: &GaussianRational, order: usize) -> MatSeries {
    let sa = a.scale(scale);
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(SqMatrix::identity(a.dim()));
    for k in 1..=order {
        let next = (&coeffs[k - 1] * &sa).scale(&GaussianRational::from_ratio(1, k as i64));
        coeffs.push(next);
    }
    MatSeries::new(coeffs)
}

fn check_pair(a: &SqMatrix, b: &SqMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    if !(&SqMatrix::identity(b.dim()) + b).is_invertible() {
        return Err(Error::SingularCayley);
    }
    Ok(())
}

/// `q(t) = C⁻¹(e^{−2at} C(b))`, the solution of `∂_t q = (1 + q) a (1 − q)`
/// with `q(0) = b`.
pub fn solve_q(a: &SqMatrix, b: &SqMatrix, order: usize) -> Result<MatSeries> {
    check_pair(a, b)?;
    let cb = b.cayley()?;
    mat_exp_series(a, &GaussianRational::from_integer(-2), order).right_mul(&cb).inverse_cayley()
}

/// `g(t) = det^{−1/2}((e^{at}(1 + b) + e^{−at}(1 − b))/2)`, the solution of
/// `∂_t g = −½ tr(a q) g` with `g(0) = 1`.
pub fn solve_g(a: &SqMatrix, b: &SqMatrix, order: usize) -> Result<TruncSeries<GaussianRational>> {
    check_pair(a, b)?;
    let one = SqMatrix::identity(a.dim());
    let plus = mat_exp_series(a, &GaussianRational::from_integer(1), order).right_mul(&(&one + b));
    let minus = mat_exp_series(a, &GaussianRational::from_integer(-1), order).right_mul(&(&one - b));
    let m = plus.checked_add(&minus)?.scale(&GaussianRational::from_ratio(1, 2));
    m.det()?.inv_sqrt()
}

/// `∂_t q − (1 + q) a (1 − q)`, of order `N − 1`.
pub fn q_residual(a: &SqMatrix, q: &MatSeries) -> Result<MatSeries> {
    let one = MatSeries::identity(q.dim(), q.order());
    let rhs = one.checked_add(q)?.right_mul(a).checked_mul(&one.checked_sub(q)?)?;
    derivative_minus(q, &rhs)
}

/// `∂_t C(q) + 2a C(q)`, of order `N − 1`.
pub fn cayley_residual(a: &SqMatrix, q: &MatSeries) -> Result<MatSeries> {
    let c = q.cayley()?;
    let rhs = c.left_mul(a).scale(&GaussianRational::from_integer(-2));
    derivative_minus(&c, &rhs)
}

/// `∂_t g + ½ tr(a q) g`, of order `N − 1`.
pub fn g_residual(
    a: &SqMatrix,
    q: &MatSeries,
    g: &TruncSeries<GaussianRational>,
) -> Result<TruncSeries<GaussianRational>> {
    let rhs = q.left_mul(a).trace().checked_mul(g)?.scale(&GaussianRational::from_ratio(-1, 2));
    derivative_minus(g, &rhs)
}

fn derivative_minus<R: Coefficient>(s: &TruncSeries<R>, rhs: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    let d = s.derivative();
    if s.order() == 0 {
        return Ok(d);
    }
    d.checked_sub(&rhs.truncate(d.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn int(rows: &[[i64; 2]]) -> SqMatrix {
        SqMatrix::from_integers(rows)
    }

    #[test]
    fn exponential_group_law() {
        let a = int(&[[1, 2], [3, -1]]);
        let e = mat_exp_series(&a, &GaussianRational::from_integer(1), 8);
        let f = mat_exp_series(&a, &GaussianRational::from_integer(-1), 8);
        assert_eq!(e.checked_mul(&f).unwrap(), MatSeries::identity(2, 8));
        let residual = e.derivative().checked_sub(&e.left_mul(&a).truncate(7)).unwrap();
        assert!(residual.is_zero());
        assert_eq!(
            mat_exp_series(&SqMatrix::zero(2), &GaussianRational::from_integer(1), 4),
            MatSeries::identity(2, 4)
        );
    }

    #[test]
    fn stationary_and_tanh() {
        let b = int(&[[0, 1], [2, 0]]);
        let q = solve_q(&SqMatrix::zero(2), &b, 5).unwrap();
        assert_eq!(q, MatSeries::constant(b.clone(), 5));
        // scalar a: C^{-1}(e^{-2at}) = tanh(at) = at - (at)^3/3 + 2(at)^5/15
        let a = SqMatrix::identity(1).scale(&GaussianRational::from_integer(2));
        let q = solve_q(&a, &SqMatrix::zero(1), 5).unwrap();
        let coeffs: Vec<GaussianRational> = q.entry(0, 0).coeffs().to_vec();
        let expected = [(0, 1), (2, 1), (0, 1), (-8, 3), (0, 1), (64, 15)];
        for (c, (n, d)) in coeffs.iter().zip(expected) {
            assert_eq!(c, &GaussianRational::from_ratio(n, d));
        }
        assert!(q_residual(&a, &q).unwrap().is_zero());
        assert!(cayley_residual(&a, &q).unwrap().is_zero());
    }

    #[test]
    fn amplitude_for_nilpotent_generator() {
        // a^2 = 0: (e^{at} + e^{-at})/2 = 1, so g = 1
        let a = int(&[[0, 1], [0, 0]]);
        let g = solve_g(&a, &SqMatrix::zero(2), 6).unwrap();
        assert_eq!(g, TruncSeries::constant(GaussianRational::from_integer(1), 6));
        let g0 = solve_g(&SqMatrix::zero(2), &int(&[[1, 1], [0, 2]]), 6).unwrap();
        assert_eq!(g0, TruncSeries::constant(GaussianRational::from_integer(1), 6));
    }

    #[test]
    fn residuals_vanish_with_initial_data() {
        let a = int(&[[1, -1], [2, 0]]);
        let b = int(&[[0, 1], [1, 1]]);
        let q = solve_q(&a, &b, 7).unwrap();
        assert_eq!(q.coeff(0), &b);
        assert!(q_residual(&a, &q).unwrap().is_zero());
        assert!(cayley_residual(&a, &q).unwrap().is_zero());
        let g = solve_g(&a, &b, 7).unwrap();
        assert!(g_residual(&a, &q, &g).unwrap().is_zero());
        assert!(!g.coeff(1).is_zero());
    }

    #[test]
    fn singular_initial_data() {
        let b = -SqMatrix::identity(2);
        assert_eq!(solve_q(&SqMatrix::zero(2), &b, 3), Err(Error::SingularCayley));
        assert_eq!(solve_g(&SqMatrix::zero(2), &b, 3), Err(Error::SingularCayley));
    }
}
