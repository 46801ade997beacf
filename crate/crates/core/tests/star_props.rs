mod common;

use common::strategies::*;
use common::*;
use proptest::prelude::*;
use starquant::algebra::Monomial;
use starquant::star::{
    exp_linear_product, intertwine, ode_star_exponential, star, star_commutator, star_k_ordered, star_terms, Side,
};
use starquant::{
    Error, GaussianRational, MultiPoly, OrderingK, Param, ParamScalar, SqMatrix, StarContext, TruncSeries,
};

fn ctx_of(lambda: &SqMatrix) -> StarContext {
    StarContext::from_matrix(lambda, StarContext::mu_coupling()).unwrap()
}

/// Keep only the terms of `p` with `τ`-exponent at most `order`.
fn truncate_tau(p: &MultiPoly, order: i32) -> MultiPoly {
    p.map_coefficients(|c| {
        Ok(c.split_by(Param::Tau)
            .into_iter()
            .filter(|&(e, _)| e <= order)
            .fold(ParamScalar::zero(), |acc, (e, rest)| &acc + &(&rest * &ParamScalar::tau().pow(e as u32))))
    })
    .unwrap()
}

/// `Σ_{j ≤ order} (sign · τ ⟨a, u⟩)^j / j!`
fn truncated_exp(a: &[GaussianRational], sign: i64, order: u32) -> MultiPoly {
    let n = a.len();
    let lin =
        a.iter().enumerate().fold(MultiPoly::zero(n), |acc, (j, c)| &acc + &MultiPoly::var(n, j).scale_gaussian(c));
    let x = lin.scale(&ParamScalar::tau().scale(&q(sign, 1)));
    let mut out = MultiPoly::one(n);
    let mut power = MultiPoly::one(n);
    for j in 1..=order {
        power = (&power * &x).scale_gaussian(&q(1, j as i64));
        out = &out + &power;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn contracted_star_matches_index_tuple_sum(lambda in antisymmetric(3), f in poly(3, 3, 3), g in poly(3, 3, 3)) {
        let ctx = ctx_of(&lambda);
        prop_assert_eq!(star(&ctx, &f, &g).unwrap(), tuple_star(&lambda, ctx.coupling(), &f, &g));
    }

    #[test]
    fn associativity_with_parameters(lambda in antisymmetric(2), f in poly(2, 3, 3), g in poly(2, 3, 3), h in poly(2, 3, 3)) {
        let ctx = ctx_of(&lambda);
        let left = star(&ctx, &star(&ctx, &f, &g).unwrap(), &h).unwrap();
        let right = star(&ctx, &f, &star(&ctx, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_and_flat_limits(lambda in antisymmetric(3), f in poly(3, 4, 4), g in poly(3, 4, 4)) {
        let ctx = ctx_of(&lambda);
        let one = MultiPoly::one(3);
        prop_assert_eq!(star(&ctx, &f, &one).unwrap(), f.clone());
        prop_assert_eq!(star(&ctx, &one, &f).unwrap(), f.clone());
        let flat = ctx_of(&SqMatrix::zero(3));
        prop_assert_eq!(star(&flat, &f, &g).unwrap(), &f * &g);
        prop_assert!(star_commutator(&ctx, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn k_th_term_is_homogeneous(lambda in antisymmetric(3), p in 0u32..4, r in 0u32..4, seed in any::<u64>()) {
        let mut rng = starquant::random::rng(seed);
        let f = starquant::random::random_homogeneous(&mut rng, 3, p, 3);
        let g = starquant::random::random_homogeneous(&mut rng, 3, r, 3);
        let terms = star_terms(&ctx_of(&lambda), &f, &g).unwrap();
        prop_assert!(terms.len() as u32 <= p.min(r) + 1);
        for (k, t) in terms.iter().enumerate() {
            for (m, c) in t.terms() {
                prop_assert_eq!(m.degree(), p + r - 2 * k as u32);
                prop_assert_eq!(mu_exponents(c), vec![k as i32; c.len()]);
            }
        }
    }

    #[test]
    fn weyl_k_ordering_is_the_plain_product(lambda in antisymmetric(4), f in poly(4, 3, 3), g in poly(4, 3, 3)) {
        let ctx = ctx_of(&lambda);
        prop_assert_eq!(star_k_ordered(&ctx, &OrderingK::weyl(2), &f, &g).unwrap(), star(&ctx, &f, &g).unwrap());
    }

    #[test]
    fn intertwiners_invert_each_other(k in symmetric(4), f in poly(4, 4, 4)) {
        let k = OrderingK::new(k).unwrap();
        let c = StarContext::weyl_coupling();
        prop_assert_eq!(intertwine(&k.neg(), &intertwine(&k, &f, &c).unwrap(), &c).unwrap(), f);
    }

    #[test]
    fn exp_linear_matches_truncated_exponential(
        lambda in antisymmetric(2),
        k in symmetric(2),
        a in prop::collection::vec(rational(), 2),
        f in rational_poly(2, 3, 3),
    ) {
        let order = 4;
        let ctx = ctx_of(&lambda);
        let k = OrderingK::new(k).unwrap();
        let s = &ParamScalar::mu() * &ParamScalar::tau();
        let (pre, shifted) = exp_linear_product(&ctx, &k, &a, &s, &f, Side::Left).unwrap();
        let e = truncated_exp(&a, 1, order);
        prop_assert_eq!(truncate_tau(&pre.exponent().unwrap(), 1), truncated_exp(&a, 1, 1) - MultiPoly::one(2));
        let lhs = truncate_tau(&star_k_ordered(&ctx, &k, &e, &f).unwrap(), order as i32);
        prop_assert_eq!(lhs, truncate_tau(&(&e * &shifted), order as i32));

        let (pre, shifted) = exp_linear_product(&ctx, &k, &a, &s, &f, Side::Right).unwrap();
        prop_assert_eq!(pre.sign, -1);
        let e = truncated_exp(&a, -1, order);
        let lhs = truncate_tau(&star_k_ordered(&ctx, &k, &f, &e).unwrap(), order as i32);
        prop_assert_eq!(lhs, truncate_tau(&(&e * &shifted), order as i32));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn commutator_jacobi(lambda in antisymmetric(4), f in rational_poly(4, 3, 3), g in rational_poly(4, 3, 3), h in rational_poly(4, 3, 3)) {
        let ctx = ctx_of(&lambda);
        let br = |x: &MultiPoly, y: &MultiPoly| star_commutator(&ctx, x, y).unwrap();
        let sum = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(sum.is_zero());
    }
}

#[test]
fn ode_oracle_recursion() {
    let lambda = SqMatrix::from_integers(&[[0, 1], [-1, 0]]);
    let ctx = ctx_of(&lambda);
    let inv_mu = ParamScalar::mu().try_inverse().unwrap();
    let h = (&MultiPoly::var(2, 0).pow(2) + &MultiPoly::var(2, 1).pow(2)).scale(&inv_mu);
    let f = ode_star_exponential(&ctx, &h, 6).unwrap();
    // ∂_t F = H ⋆ F coefficientwise
    for k in 0..6 {
        let lhs = f.coeff(k + 1).scale_gaussian(&q(k as i64 + 1, 1));
        assert_eq!(lhs, star(&ctx, &h, f.coeff(k)).unwrap());
    }
    let flat = ctx_of(&SqMatrix::zero(2));
    let g = MultiPoly::var(2, 0);
    let e = ode_star_exponential(&flat, &g, 5).unwrap();
    assert_eq!(e.coeff(5), &g.pow(5).scale_gaussian(&q(1, 120)));
    assert_eq!(
        ode_star_exponential(&ctx, &MultiPoly::zero(2), 3).unwrap(),
        TruncSeries::constant(MultiPoly::one(2), 3)
    );
}

#[test]
fn non_constant_lambda_contracted_product() {
    // Λ^{01} = z0: terminates after the derivatives of f and g run out
    let z = |j| MultiPoly::var(2, j);
    let zero = MultiPoly::zero(2);
    let ctx = StarContext::new(vec![vec![zero.clone(), z(0)], vec![-z(0), zero]], StarContext::mu_coupling()).unwrap();
    let p = star(&ctx, &z(0), &z(1)).unwrap();
    assert_eq!(p, &(&z(0) * &z(1)) + &z(0).scale(&StarContext::mu_coupling()));
    let m = MultiPoly::monomial(Monomial::new(vec![2, 1]), ParamScalar::one());
    assert!(star(&ctx, &m, &m).is_ok());
    assert_eq!(star_k_ordered(&ctx, &OrderingK::weyl(1), &z(0), &z(1)), Err(Error::NonConstantLambda));
}
