use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starquant::graded::{check_jacobi, check_lambda_relation};
use starquant::matrix::{closed_star_exponential, quadratic_form, riccati_vs_moyal};
use starquant::random::{random_antisymmetric, random_invertible_antisymmetric, random_poly, random_symmetric, rng};
use starquant::star::{ode_star_exponential, star};
use starquant::{GaussianRational, MultiPoly, ParamScalar, StarContext};

fn star_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("star");
    for n in [2, 4, 6] {
        let mut r = rng(n as u64);
        let ctx = StarContext::from_matrix(&random_antisymmetric(&mut r, n), StarContext::mu_coupling()).unwrap();
        let f = random_poly(&mut r, n, 4, 6);
        let g = random_poly(&mut r, n, 4, 6);
        group.bench_with_input(BenchmarkId::new("degree4", n), &n, |b, _| {
            b.iter(|| star(&ctx, black_box(&f), black_box(&g)))
        });
    }
    group.finish();
}

fn star_exponential(c: &mut Criterion) {
    let mut group = c.benchmark_group("star_exponential");
    group.sample_size(10);
    let inv_mu = ParamScalar::mu().try_inverse().unwrap();
    for n in [2, 4] {
        let mut r = rng(100 + n as u64);
        let lambda = random_invertible_antisymmetric(&mut r, n);
        let a = random_symmetric(&mut r, n);
        let ctx = StarContext::from_matrix(&lambda, StarContext::mu_coupling()).unwrap();
        let h = quadratic_form(&a).scale(&inv_mu);
        group.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, _| {
            b.iter(|| closed_star_exponential(&lambda, &a, 8).unwrap().expand().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ode_oracle", n), &n, |b, _| {
            b.iter(|| ode_star_exponential(&ctx, &h, 8))
        });
    }
    group.finish();
}

fn riccati(c: &mut Criterion) {
    let (a, b, cc) =
        (GaussianRational::from_integer(1), GaussianRational::from_integer(2), GaussianRational::from_integer(-1));
    c.bench_function("riccati_vs_moyal", |bench| bench.iter(|| riccati_vs_moyal(&a, &b, &cc, 8)));
}

fn validators(c: &mut Criterion) {
    let mut group = c.benchmark_group("validators");
    group.sample_size(10);
    let n = 3;
    let z = |j| MultiPoly::var(n, j);
    let zero = MultiPoly::zero(n);
    let so3 = StarContext::new(
        vec![vec![zero.clone(), z(2), -z(1)], vec![-z(2), zero.clone(), z(0)], vec![z(1), -z(0), zero]],
        StarContext::mu_coupling(),
    )
    .unwrap();
    group.bench_function("jacobi_so3_d4", |b| b.iter(|| check_jacobi(&so3, 4)));
    let constant = StarContext::from_matrix(&random_antisymmetric(&mut rng(7), n), StarContext::mu_coupling()).unwrap();
    group.bench_function("lambda_relation_constant_d3", |b| b.iter(|| check_lambda_relation(&constant, 3, 3)));
    group.finish();
}

criterion_group!(benches, star_product, star_exponential, riccati, validators);
criterion_main!(benches);
