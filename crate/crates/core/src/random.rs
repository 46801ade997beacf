//! Seeded generators for test and verification inputs.

use rand_chacha::ChaCha8Rng;

pub use rand::{Rng, SeedableRng};

use crate::algebra::{GaussianRational, Monomial, MultiPoly, ParamScalar};
use crate::matrix::SqMatrix;

/// The generator used by every randomized suite.
pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn small_rational(rng: &mut impl Rng) -> GaussianRational {
    GaussianRational::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let r = small_rational(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Up to `terms` random monomials of degree `≤ max_degree` with small
/// rational coefficients.
pub fn random_poly(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(n);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = ParamScalar::from(nonzero_rational(rng));
        out = &out + &MultiPoly::monomial(Monomial::new(exps), c);
    }
    out
}

/// Random homogeneous polynomial of the given degree (nonzero).
pub fn random_homogeneous(rng: &mut impl Rng, n: usize, degree: u32, terms: usize) -> MultiPoly {
    loop {
        let mut out = MultiPoly::zero(n);
        for _ in 0..terms.max(1) {
            let mut exps = vec![0u32; n];
            for _ in 0..degree {
                exps[rng.gen_range(0..n)] += 1;
            }
            out = &out + &MultiPoly::monomial(Monomial::new(exps), ParamScalar::from(nonzero_rational(rng)));
        }
        if !out.is_zero() {
            return out;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> SqMatrix {
    SqMatrix::from_fn(n, |_, _| small_rational(rng))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> SqMatrix {
    let m = random_matrix(rng, n);
    SqMatrix::from_fn(n, |i, j| if i <= j { m.get(i, j).clone() } else { m.get(j, i).clone() })
}

pub fn random_antisymmetric(rng: &mut impl Rng, n: usize) -> SqMatrix {
    let m = random_matrix(rng, n);
    SqMatrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => m.get(i, j).clone(),
        std::cmp::Ordering::Equal => GaussianRational::from_integer(0),
        std::cmp::Ordering::Greater => -m.get(j, i),
    })
}

/// Antisymmetric with nonzero determinant; `n` must be even.
pub fn random_invertible_antisymmetric(rng: &mut impl Rng, n: usize) -> SqMatrix {
    assert!(n.is_multiple_of(2), "odd antisymmetric matrices are singular");
    loop {
        let m = random_antisymmetric(rng, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random `b` with `1 + b` invertible.
pub fn random_cayley_domain(rng: &mut impl Rng, n: usize) -> SqMatrix {
    loop {
        let b = random_matrix(rng, n);
        if (&SqMatrix::identity(n) + &b).is_invertible() {
            return b;
        }
    }
}
