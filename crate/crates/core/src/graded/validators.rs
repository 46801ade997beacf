use std::collections::BTreeMap;

use crate::algebra::{GaussianRational, Monomial, MultiPoly, ParamScalar};
use crate::report::Report;
use crate::star::{contracted_terms, StarContext};
use crate::Result;

/// All monomials in `n` variables with total degree in `lo..=hi`, in
/// graded-lexicographic order.
pub fn monomials_up_to(n: usize, lo: u32, hi: u32) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    for d in lo..=hi {
        let mut exps = vec![0u32; n];
        fill(&mut exps, 0, d, &mut out);
    }
    out.sort_by(|a, b| leading(a).cmp(leading(b)));
    out
}

fn leading(p: &MultiPoly) -> &Monomial {
    p.terms().next().expect("nonzero monomial").0
}

fn fill(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiPoly>) {
    let n = exps.len();
    if n == 0 {
        if remaining == 0 {
            out.push(MultiPoly::one(0));
        }
        return;
    }
    if pos == n - 1 {
        exps[pos] = remaining;
        out.push(MultiPoly::monomial(Monomial::new(exps.clone()), ParamScalar::one()));
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e;
        fill(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

fn add_index(d: &[u32], j: usize) -> Vec<u32> {
    let mut out = d.to_vec();
    out[j] += 1;
    out
}

fn sub_multisets(d: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &e in d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=e).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn multi_binomial(d: &[u32], sub: &[u32]) -> i64 {
    d.iter().zip(sub).map(|(&n, &k)| binomial(n, k)).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// One factor `(←∂_α Λ^{αβ} →∂_β)` of the composed operator. The state maps
/// the multi-index of right derivatives still pending to the accumulated
/// product of `f` and the earlier `Λ` factors. `←∂_α` differentiates that
/// product; the pending derivatives are distributed by Leibniz over the new
/// `Λ` entry and whatever lies further right.
fn compose_step(ctx: &StarContext, state: &BTreeMap<Vec<u32>, MultiPoly>) -> Result<BTreeMap<Vec<u32>, MultiPoly>> {
    let n = ctx.n();
    let mut next: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
    for (pending, p) in state {
        let splits: Vec<(Vec<u32>, Vec<u32>, GaussianRational)> = sub_multisets(pending)
            .into_iter()
            .map(|sub| {
                let rest = pending.iter().zip(&sub).map(|(a, b)| a - b).collect();
                let w = GaussianRational::from_integer(multi_binomial(pending, &sub));
                (sub, rest, w)
            })
            .collect();
        for alpha in 0..n {
            let dp = p.derivative(alpha)?;
            if dp.is_zero() {
                continue;
            }
            for beta in 0..n {
                let entry = ctx.lambda(alpha, beta);
                if entry.is_zero() {
                    continue;
                }
                for (sub, rest, weight) in &splits {
                    let de = entry.derivative_multi(sub);
                    if de.is_zero() {
                        continue;
                    }
                    let term = (&dp * &de).scale_gaussian(weight);
                    let slot = next.entry(add_index(rest, beta)).or_insert_with(|| MultiPoly::zero(n));
                    *slot = &*slot + &term;
                }
            }
        }
    }
    next.retain(|_, p| !p.is_zero());
    Ok(next)
}

/// Compare both sides of the `Λ`-relation for `2 ≤ k ≤ k_max` on every pair
/// of monomials of degree at most `d_max`. The left side is the composed
/// operator `(←∂_{α₁} Λ^{α₁β₁} →∂_{β₁}) ⋯ (←∂_{αₖ} Λ^{αₖβₖ} →∂_{βₖ})`, where each
/// `←∂` acts on everything to its left and each `→∂` on everything to its
/// right; the right side is the fully contracted operator
/// `←∂_{α₁…αₖ} Λ^{α₁β₁}⋯Λ^{αₖβₖ} →∂_{β₁…βₖ}`.
///
/// Reports the first failing `(k, f, g)` in (k, grlex f, grlex g) order.
pub fn check_lambda_relation(ctx: &StarContext, k_max: usize, d_max: u32) -> Result<Report> {
    let n = ctx.n();
    let monomials = monomials_up_to(n, 0, d_max);
    let unit = ParamScalar::one();
    let mut left: Vec<BTreeMap<Vec<u32>, MultiPoly>> = Vec::with_capacity(monomials.len());
    for f in &monomials {
        left.push(compose_step(ctx, &BTreeMap::from([(vec![0; n], f.clone())]))?);
    }
    let mut rhs_cache: BTreeMap<(usize, usize), Vec<MultiPoly>> = BTreeMap::new();
    for k in 2..=k_max {
        let factorial = GaussianRational::from_integer((1..=k as i64).product());
        for (fi, f) in monomials.iter().enumerate() {
            left[fi] = compose_step(ctx, &left[fi])?;
            for (gi, g) in monomials.iter().enumerate() {
                let mut lhs = MultiPoly::zero(n);
                for (d, p) in &left[fi] {
                    lhs = &lhs + &(p * &g.derivative_multi(d));
                }
                let terms = match rhs_cache.entry((fi, gi)) {
                    std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(contracted_terms(n, ctx.lambda_entries(), &unit, f, g)?)
                    }
                };
                let rhs = terms.get(k).map(|t| t.scale_gaussian(&factorial)).unwrap_or_else(|| MultiPoly::zero(n));
                if lhs != rhs {
                    let witness = BTreeMap::from([
                        ("k".to_string(), k.to_string()),
                        ("f".to_string(), f.to_string()),
                        ("g".to_string(), g.to_string()),
                        ("lhs".to_string(), lhs.to_string()),
                        ("rhs".to_string(), rhs.to_string()),
                    ]);
                    return Ok(Report::failed(Some(k), witness));
                }
            }
        }
    }
    Ok(Report::passed())
}

/// `{f, g} = Λ^{αβ} ∂_α f ∂_β g`
pub fn poisson_bracket(ctx: &StarContext, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let n = ctx.n();
    let mut out = MultiPoly::zero(n);
    for alpha in 0..n {
        let df = f.derivative(alpha)?;
        if df.is_zero() {
            continue;
        }
        for beta in 0..n {
            let entry = ctx.lambda(alpha, beta);
            if entry.is_zero() {
                continue;
            }
            let dg = g.derivative(beta)?;
            if !dg.is_zero() {
                out = &out + &(&(entry * &df) * &dg);
            }
        }
    }
    Ok(out)
}

/// `V_f^β = Σ_α Λ^{αβ} ∂_α f`, so that `{f, g} = Σ_β V_f^β ∂_β g`.
fn hamiltonian_field(ctx: &StarContext, f: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let n = ctx.n();
    let grads = (0..n).map(|a| f.derivative(a)).collect::<Result<Vec<_>>>()?;
    Ok((0..n)
        .map(|beta| {
            grads.iter().enumerate().fold(MultiPoly::zero(n), |acc, (alpha, d)| {
                let entry = ctx.lambda(alpha, beta);
                if d.is_zero() || entry.is_zero() {
                    acc
                } else {
                    &acc + &(entry * d)
                }
            })
        })
        .collect())
}

fn apply_field(field: &[MultiPoly], grad: &[MultiPoly]) -> MultiPoly {
    let n = field.len();
    field.iter().zip(grad).fold(
        MultiPoly::zero(n),
        |acc, (v, d)| {
            if v.is_zero() || d.is_zero() {
                acc
            } else {
                &acc + &(v * d)
            }
        },
    )
}

/// Check `{f,{g,h}} + {g,{h,f}} + {h,{f,g}} = 0` on monomial triples of
/// degree `1..=d_max`. The cyclic sum is alternating, so only triples with
/// `f ≤ g ≤ h` in grlex order are visited.
pub fn check_jacobi(ctx: &StarContext, d_max: u32) -> Result<Report> {
    let n = ctx.n();
    let monomials = monomials_up_to(n, 1, d_max);
    let m = monomials.len();
    let fields = monomials.iter().map(|f| hamiltonian_field(ctx, f)).collect::<Result<Vec<_>>>()?;
    // gradients of {g, h} for g ≤ h
    let mut bracket_grads: BTreeMap<(usize, usize), Vec<MultiPoly>> = BTreeMap::new();
    for i in 0..m {
        for j in i..m {
            let b = poisson_bracket(ctx, &monomials[i], &monomials[j])?;
            bracket_grads.insert((i, j), (0..n).map(|a| b.derivative(a)).collect::<Result<Vec<_>>>()?);
        }
    }
    let bracket_with = |f: usize, i: usize, j: usize| -> MultiPoly {
        if i <= j {
            apply_field(&fields[f], &bracket_grads[&(i, j)])
        } else {
            -apply_field(&fields[f], &bracket_grads[&(j, i)])
        }
    };
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                let sum = &(&bracket_with(i, j, k) + &bracket_with(j, k, i)) + &bracket_with(k, i, j);
                if !sum.is_zero() {
                    let (f, g, h) = (&monomials[i], &monomials[j], &monomials[k]);
                    let witness = BTreeMap::from([
                        ("f".to_string(), f.to_string()),
                        ("g".to_string(), g.to_string()),
                        ("h".to_string(), h.to_string()),
                        ("jacobiator".to_string(), sum.to_string()),
                    ]);
                    let degree = f.degree().unwrap_or(0) + g.degree().unwrap_or(0) + h.degree().unwrap_or(0);
                    return Ok(Report::failed(Some(degree as usize), witness));
                }
            }
        }
    }
    Ok(Report::passed())
}
