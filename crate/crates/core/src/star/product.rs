use std::collections::BTreeMap;

use crate::algebra::{GaussianRational, MultiPoly, ParamScalar};
use crate::{Error, Result};

use super::{OrderingK, StarContext};

/// The contracted expansion with an arbitrary `n×n` polynomial matrix `m`:
/// returns the list of terms `c^k/k! · Σ m^{α₁β₁}⋯m^{αₖβₖ} ∂_α f ∂_β g`,
/// `k = 0, 1, …`, up to the last nonzero one.
///
/// Index tuples are collapsed onto their (left multiset, right multiset)
/// pair as they are generated, accumulating the product of matrix entries;
/// summation order is fixed by the `BTreeMap` keys.
pub(crate) fn contracted_terms(
    n: usize,
    m: &[MultiPoly],
    coupling: &ParamScalar,
    f: &MultiPoly,
    g: &MultiPoly,
) -> Result<Vec<MultiPoly>> {
    for p in [f, g] {
        if p.nvars() != n {
            return Err(Error::VariableCountMismatch { expected: n, found: p.nvars() });
        }
    }
    let mut terms = vec![f * g];
    if f.is_zero() || g.is_zero() {
        return Ok(terms);
    }
    let cap = (f.degree().unwrap_or(0) + g.degree().unwrap_or(0) + 4) as usize;
    let entries: Vec<(usize, usize, &MultiPoly)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !m[a * n + b].is_zero())
        .map(|(a, b)| (a, b, &m[a * n + b]))
        .collect();

    let mut state: BTreeMap<(Vec<u32>, Vec<u32>), MultiPoly> = BTreeMap::new();
    state.insert((vec![0; n], vec![0; n]), MultiPoly::one(n));
    let mut weight = ParamScalar::one();
    for k in 1.. {
        let mut next: BTreeMap<(Vec<u32>, Vec<u32>), MultiPoly> = BTreeMap::new();
        for ((left, right), w) in &state {
            for &(a, b, entry) in &entries {
                let mut l = left.clone();
                l[a] += 1;
                if !f.survives_derivative(&l) {
                    continue;
                }
                let mut r = right.clone();
                r[b] += 1;
                if !g.survives_derivative(&r) {
                    continue;
                }
                let inc = w * entry;
                match next.entry((l, r)) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(inc);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let sum = o.get() + &inc;
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        next.retain(|_, w| !w.is_zero());
        if next.is_empty() {
            break;
        }
        if k > cap {
            return Err(Error::ContractionCapExceeded(cap));
        }
        weight = (&weight * coupling).scale(&GaussianRational::from_ratio(1, k as i64));

        let mut g_derivs: BTreeMap<&[u32], MultiPoly> = BTreeMap::new();
        for (_, r) in next.keys() {
            g_derivs.entry(r.as_slice()).or_insert_with(|| g.derivative_multi(r));
        }
        let mut term = MultiPoly::zero(n);
        let mut iter = next.iter().peekable();
        while let Some(((l, r), w)) = iter.next() {
            let mut inner = w * &g_derivs[r.as_slice()];
            while let Some(((l2, r2), w2)) = iter.peek() {
                if l2 != l {
                    break;
                }
                inner = &inner + &(*w2 * &g_derivs[r2.as_slice()]);
                iter.next();
            }
            term = &term + &(&f.derivative_multi(l) * &inner);
        }
        terms.push(term.scale(&weight));
        state = next;
    }
    while terms.len() > 1 && terms.last().is_some_and(MultiPoly::is_zero) {
        terms.pop();
    }
    Ok(terms)
}

/// `f ⋆ g` by the fully contracted expansion.
///
/// The sum stops at `k = min(deg f, deg g)` for constant `Λ` and at the first
/// order where every derivative product vanishes otherwise. Non-constant `Λ`
/// is accepted; associativity then depends on the `Λ`-relation (see
/// [`crate::graded::check_lambda_relation`]).
pub fn star(ctx: &StarContext, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let terms = star_terms(ctx, f, g)?;
    Ok(terms.iter().skip(1).fold(terms[0].clone(), |acc, t| &acc + t))
}

/// The individual contraction orders of `f ⋆ g`, coupling factors included;
/// entry `k` is the k-fold contraction.
pub fn star_terms(ctx: &StarContext, f: &MultiPoly, g: &MultiPoly) -> Result<Vec<MultiPoly>> {
    contracted_terms(ctx.n(), ctx.lambda_entries(), ctx.coupling(), f, g)
}

/// `f ⋆ g − g ⋆ f`
pub fn star_commutator(ctx: &StarContext, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    Ok(&star(ctx, f, g)? - &star(ctx, g, f)?)
}

/// The `K`-ordered product: the contracted expansion with `Λ + K` in place
/// of `Λ`. `K = K₀` and `K = −K₀` give the normal and anti-normal products.
pub fn star_k_ordered(ctx: &StarContext, k: &OrderingK, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let m = shifted_matrix(ctx, k)?;
    let terms = contracted_terms(ctx.n(), &m, ctx.coupling(), f, g)?;
    Ok(terms.iter().skip(1).fold(terms[0].clone(), |acc, t| &acc + t))
}

/// Entries of `Λ + K`; requires constant `Λ`.
pub(crate) fn shifted_matrix(ctx: &StarContext, k: &OrderingK) -> Result<Vec<MultiPoly>> {
    if !ctx.is_constant() {
        return Err(Error::NonConstantLambda);
    }
    let n = ctx.n();
    if k.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
    }
    let mut m = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            m.push(ctx.lambda(i, j) + &MultiPoly::from_scalar(n, k.matrix().get(i, j).clone()));
        }
    }
    Ok(m)
}
