//! Reference implementations written independently of the library's
//! algorithms: plain index-tuple sums, tensor-form bidifferential operators,
//! Leibniz determinants and brute-force enumeration.

#![allow(dead_code)]

use num_traits::{One, Zero};
use starquant::algebra::{Monomial, TruncSeries};
use starquant::{GaussianRational, MultiPoly, Param, ParamScalar, SqMatrix};

pub fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_ratio(n, d)
}

pub fn factorial(k: usize) -> GaussianRational {
    GaussianRational::from_integer((1..=k as i64).product())
}

fn diff_all(f: &MultiPoly, idx: &[usize]) -> MultiPoly {
    idx.iter().fold(f.clone(), |acc, &j| acc.derivative(j).unwrap())
}

/// `Σ_k c^k/k! Σ_{α,β ∈ [n]^k} M^{α₁β₁}⋯M^{αₖβₖ} ∂_{α}f ∂_{β}g` by running
/// through every ordered index tuple. `m` is a constant matrix.
pub fn tuple_star(m: &SqMatrix, coupling: &ParamScalar, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let n = m.dim();
    let kmax = f.degree().unwrap_or(0).min(g.degree().unwrap_or(0)) as usize;
    let mut total = f * g;
    for k in 1..=kmax {
        let pairs = n * n;
        let mut sum = MultiPoly::zero(n);
        for code in 0..pairs.pow(k as u32) {
            let mut c = code;
            let mut alpha = Vec::with_capacity(k);
            let mut beta = Vec::with_capacity(k);
            let mut weight = GaussianRational::one();
            for _ in 0..k {
                let p = c % pairs;
                c /= pairs;
                let (a, b) = (p / n, p % n);
                weight = weight * m.get(a, b);
                alpha.push(a);
                beta.push(b);
            }
            if weight.is_zero() {
                continue;
            }
            let df = diff_all(f, &alpha);
            if df.is_zero() {
                continue;
            }
            sum = &sum + &(&df * &diff_all(g, &beta)).scale_gaussian(&weight);
        }
        let factor = coupling.pow(k as u32).scale(&factorial(k).inv().unwrap());
        total = &total + &sum.scale(&factor);
    }
    total
}

/// A bidifferential operator acting on `f ⊗ g`, kept as a list of
/// unmultiplied pairs.
#[derive(Clone)]
pub struct Tensor(pub Vec<(MultiPoly, MultiPoly)>);

impl Tensor {
    pub fn new(f: &MultiPoly, g: &MultiPoly) -> Self {
        Tensor(vec![(f.clone(), g.clone())])
    }

    /// Apply `Σ_j c_j (∂_{l_j} ⊗ ∂_{r_j})`.
    pub fn apply(&self, ops: &[(GaussianRational, usize, usize)]) -> Self {
        let mut out = Vec::new();
        for (a, b) in &self.0 {
            for (c, l, r) in ops {
                let da = a.derivative(*l).unwrap();
                let db = b.derivative(*r).unwrap();
                if !da.is_zero() && !db.is_zero() {
                    out.push((da.scale_gaussian(c), db));
                }
            }
        }
        Tensor(out)
    }

    pub fn contract(&self, n: usize) -> MultiPoly {
        self.0.iter().fold(MultiPoly::zero(n), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `μ ∘ exp(c · P)(f ⊗ g)` for `P = Σ_j c_j ∂_{l_j} ⊗ ∂_{r_j}`.
pub fn exp_bidifferential(
    ops: &[(GaussianRational, usize, usize)],
    c: &ParamScalar,
    f: &MultiPoly,
    g: &MultiPoly,
) -> MultiPoly {
    let n = f.nvars();
    let mut t = Tensor::new(f, g);
    let mut total = t.contract(n);
    let mut k = 0;
    loop {
        t = t.apply(ops);
        k += 1;
        if t.is_empty() {
            return total;
        }
        let factor = c.pow(k).scale(&factorial(k as usize).inv().unwrap());
        total = &total + &t.contract(n).scale(&factor);
    }
}

/// `ih`
pub fn i_hbar() -> ParamScalar {
    ParamScalar::hbar().scale(&GaussianRational::i())
}

/// Moyal product on `(u_1..u_m, v_1..v_m)`:
/// `exp((iℏ/2) Σ_i (∂_{v_i} ⊗ ∂_{u_i} − ∂_{u_i} ⊗ ∂_{v_i}))`.
pub fn moyal(m: usize, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let mut ops = Vec::new();
    for i in 0..m {
        ops.push((q(1, 1), m + i, i));
        ops.push((q(-1, 1), i, m + i));
    }
    exp_bidifferential(&ops, &i_hbar().scale(&q(1, 2)), f, g)
}

fn multi_indices(m: usize, total: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in multi_indices(m - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// ΨDO product `Σ_α (iℏ)^{|α|}/α! ∂_v^α f ∂_u^α g` (`sign = 1`), or the
/// anti-ΨDO product `Σ_α (−iℏ)^{|α|}/α! ∂_u^α f ∂_v^α g` (`sign = −1`).
pub fn psido(m: usize, sign: i64, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let n = 2 * m;
    let dmax = f.degree().unwrap_or(0).min(g.degree().unwrap_or(0));
    let base = i_hbar().scale(&q(sign, 1));
    let mut total = MultiPoly::zero(n);
    for k in 0..=dmax {
        for alpha in multi_indices(m, k) {
            let mut left = vec![0u32; n];
            let mut right = vec![0u32; n];
            let (lo, hi) = if sign > 0 { (m, 0) } else { (0, m) };
            let mut denom = GaussianRational::one();
            for (i, &a) in alpha.iter().enumerate() {
                left[lo + i] = a;
                right[hi + i] = a;
                denom = denom * factorial(a as usize);
            }
            let term = &f.derivative_multi(&left) * &g.derivative_multi(&right);
            total = &total + &term.scale(&base.pow(k).scale(&denom.inv().unwrap()));
        }
    }
    total
}

/// The middle line of the `K`-ordered product:
/// `Σ_k (iℏ)^k/(k! 2^k) K_{i₁j₁}⋯K_{iₖjₖ} (∂_{i}f) ⋆_Λ (∂_{j}g)`.
pub fn k_contracted_then_star(
    k_matrix: &SqMatrix,
    star: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly,
    f: &MultiPoly,
    g: &MultiPoly,
) -> MultiPoly {
    let n = f.nvars();
    let mut ops = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !k_matrix.get(i, j).is_zero() {
                ops.push((k_matrix.get(i, j).clone(), i, j));
            }
        }
    }
    let c = i_hbar().scale(&q(1, 2));
    let mut t = Tensor::new(f, g);
    let mut total = star(f, g);
    let mut k = 0;
    loop {
        t = t.apply(&ops);
        k += 1;
        if t.is_empty() {
            return total;
        }
        let factor = c.pow(k).scale(&factorial(k as usize).inv().unwrap());
        for (a, b) in &t.0 {
            total = &total + &star(a, b).scale(&factor);
        }
    }
}

/// Cofactor expansion along the first row, over any commutative ring given
/// by closures.
pub fn leibniz_det<R: Clone>(
    m: &[Vec<R>],
    zero: &R,
    one: &R,
    add: &impl Fn(&R, &R) -> R,
    sub: &impl Fn(&R, &R) -> R,
    mul: &impl Fn(&R, &R) -> R,
) -> R {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    let mut total = zero.clone();
    for col in 0..n {
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = mul(&m[0][col], &leibniz_det(&minor, zero, one, add, sub, mul));
        total = if col % 2 == 0 { add(&total, &term) } else { sub(&total, &term) };
    }
    total
}

/// `det` of a matrix of scalar series by cofactor expansion.
pub fn series_det(entries: &[Vec<TruncSeries<GaussianRational>>]) -> TruncSeries<GaussianRational> {
    let order = entries[0][0].order();
    let zero = TruncSeries::constant(GaussianRational::zero(), order);
    let one = TruncSeries::constant(GaussianRational::one(), order);
    leibniz_det(entries, &zero, &one, &|a, b| a.checked_add(b).unwrap(), &|a, b| a.checked_sub(b).unwrap(), &|a, b| {
        a.checked_mul(b).unwrap()
    })
}

/// Number of exponent vectors in `[0, m]^{n+1}` with sum `m`, by exhaustion.
pub fn brute_force_monomials(n: u32, m: i64) -> u128 {
    if m < 0 {
        return 0;
    }
    let vars = n as usize + 1;
    let base = m as u64 + 1;
    let mut count = 0;
    for code in 0..base.pow(vars as u32) {
        let mut c = code;
        let mut sum = 0;
        for _ in 0..vars {
            sum += c % base;
            c /= base;
        }
        if sum == m as u64 {
            count += 1;
        }
    }
    count
}

/// Multiply every coefficient of `f` by a power of `μ` in `-1..=2` chosen
/// from the monomial's exponents, so that μ-weights vary across terms.
pub fn sprinkle_mu(f: &MultiPoly) -> MultiPoly {
    let n = f.nvars();
    let mut out = MultiPoly::zero(n);
    for (m, c) in f.terms() {
        let w = (m.exps().iter().sum::<u32>() as i32 + m.exps().first().copied().unwrap_or(0) as i32) % 4 - 1;
        let mu = ParamScalar::mu().powi(w).unwrap();
        out = &out + &MultiPoly::monomial(Monomial::new(m.exps().to_vec()), c * &mu);
    }
    out
}

/// Coordinate Jacobiator `Σ_l Λ^{il}∂_lΛ^{jk} + Λ^{jl}∂_lΛ^{ki} + Λ^{kl}∂_lΛ^{ij}`;
/// true iff it vanishes for every `(i, j, k)`.
pub fn coordinate_jacobi_holds(n: usize, lambda: impl Fn(usize, usize) -> MultiPoly) -> bool {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = MultiPoly::zero(n);
                for l in 0..n {
                    s = &s + &(&lambda(i, l) * &lambda(j, k).derivative(l).unwrap());
                    s = &s + &(&lambda(j, l) * &lambda(k, i).derivative(l).unwrap());
                    s = &s + &(&lambda(k, l) * &lambda(i, j).derivative(l).unwrap());
                }
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn mu_exponents(c: &ParamScalar) -> Vec<i32> {
    c.terms().map(|(e, _)| e.get(Param::Mu)).collect()
}

pub mod strategies {
    use proptest::prelude::*;
    use starquant::algebra::Monomial;
    use starquant::{GaussianRational, MultiPoly, ParamScalar, SqMatrix};

    pub fn rational() -> impl Strategy<Value = GaussianRational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| GaussianRational::from_ratio(n, d))
    }

    pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (rational(), rational()).prop_map(|(a, b)| a + b * GaussianRational::i())
    }

    /// Scalars in `μ^{-1..=2} ℏ^{0..=2}` with Gaussian rational coefficients.
    pub fn param_scalar() -> impl Strategy<Value = ParamScalar> {
        prop::collection::vec((gaussian(), -1i32..=2, 0i32..=2), 0..4).prop_map(|terms| {
            terms.into_iter().fold(ParamScalar::zero(), |acc, (c, mu, hbar)| {
                &acc + &(&ParamScalar::mu().powi(mu).unwrap() * &ParamScalar::hbar().pow(hbar as u32)).scale(&c)
            })
        })
    }

    pub fn poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0..=max_degree, n), param_scalar()), 0..=max_terms).prop_map(
            move |terms| {
                terms.into_iter().fold(MultiPoly::zero(n), |acc, (mut exps, c)| {
                    while exps.iter().sum::<u32>() > max_degree {
                        let j = exps.iter().position(|&e| e > 0).unwrap();
                        exps[j] -= 1;
                    }
                    &acc + &MultiPoly::monomial(Monomial::new(exps), c)
                })
            },
        )
    }

    pub fn rational_poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0..=max_degree, n), rational()), 0..=max_terms).prop_map(
            move |terms| {
                terms.into_iter().fold(MultiPoly::zero(n), |acc, (mut exps, c)| {
                    while exps.iter().sum::<u32>() > max_degree {
                        let j = exps.iter().position(|&e| e > 0).unwrap();
                        exps[j] -= 1;
                    }
                    &acc + &MultiPoly::monomial(Monomial::new(exps), ParamScalar::from(c))
                })
            },
        )
    }

    pub fn matrix(n: usize) -> impl Strategy<Value = SqMatrix> {
        prop::collection::vec(rational(), n * n).prop_map(move |v| SqMatrix::from_fn(n, |i, j| v[i * n + j].clone()))
    }

    pub fn antisymmetric(n: usize) -> impl Strategy<Value = SqMatrix> {
        matrix(n).prop_map(|m| &m - &m.transpose())
    }

    pub fn symmetric(n: usize) -> impl Strategy<Value = SqMatrix> {
        matrix(n).prop_map(|m| &m + &m.transpose())
    }
}
