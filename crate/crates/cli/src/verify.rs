use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use starquant::graded::{check_jacobi, check_lambda_relation, decompose, specialize_mu, star_graded};
use starquant::matrix::{
    cayley, cayley_residual, check_sp_pair, g_residual, inverse_cayley, q_residual, riccati_vs_moyal, solve_g, solve_q,
};
use starquant::random::{
    nonzero_rational, random_antisymmetric, random_cayley_domain, random_homogeneous, random_invertible_antisymmetric,
    random_matrix, random_poly, random_symmetric, rng, small_rational, Rng, SuiteRng,
};
use starquant::star::{intertwine, star, star_k_ordered};
use starquant::{GaussianRational, MultiPoly, OrderingK, ParamScalar, Report, SqMatrix, StarContext};

use crate::commands::Outcome;
use crate::error::{CliError, CliResult};
use crate::job::JobSpec;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Associativity,
    Intertwiner,
    Cayley,
    Riccati,
    Grading,
    Jacobi,
    LambdaRelation,
}

impl Suite {
    fn default_cases(self) -> usize {
        match self {
            Suite::Associativity => 100,
            Suite::Intertwiner | Suite::Grading => 50,
            Suite::Cayley | Suite::Riccati => 20,
            Suite::Jacobi | Suite::LambdaRelation => 1,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyInputs {
    suite: Suite,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default)]
    cases: Option<usize>,
    #[serde(default = "default_bound")]
    d_max: u32,
    #[serde(default = "default_k_max")]
    k_max: usize,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_bound() -> u32 {
    4
}

fn default_k_max() -> usize {
    4
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct CaseReport {
    pub case: usize,
    pub report: Report,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub pass: bool,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
}

type Witness = BTreeMap<String, String>;

fn witness<const N: usize>(pairs: [(&str, String); N]) -> Witness {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn check(ok: bool, what: &str, mut w: Witness) -> Report {
    if ok {
        Report::passed()
    } else {
        w.insert("check".into(), what.into());
        Report::failed(None, w)
    }
}

pub fn run_verify(job: &JobSpec, cap: u32) -> CliResult<Outcome> {
    let inputs: VerifyInputs = job.inputs()?;
    let ctx = job.context(cap)?;
    let count = inputs.cases.unwrap_or(inputs.suite.default_cases());
    let mut rng = rng(inputs.seed);
    let order = job.truncation;
    let mut cases = Vec::new();
    match inputs.suite {
        Suite::Jacobi | Suite::LambdaRelation => {
            let ctx = ctx.ok_or_else(|| CliError::input("this suite validates the job's context; none was given"))?;
            let report = if inputs.suite == Suite::Jacobi {
                check_jacobi(&ctx, inputs.d_max)?
            } else {
                check_lambda_relation(&ctx, inputs.k_max, inputs.d_max)?
            };
            cases.push(report);
        }
        suite => {
            if let Some(ctx) = &ctx {
                if !ctx.is_constant() {
                    return Err(starquant::Error::NonConstantLambda.into());
                }
            }
            for case in 0..count {
                let report = match suite {
                    Suite::Associativity => associativity(&mut rng, ctx.as_ref(), case),
                    Suite::Intertwiner => intertwiner(&mut rng, ctx.as_ref(), case),
                    Suite::Cayley => cayley_case(&mut rng, case, order),
                    Suite::Riccati => riccati_case(&mut rng, order),
                    Suite::Grading => grading(&mut rng, ctx.as_ref(), case),
                    Suite::Jacobi | Suite::LambdaRelation => unreachable!(),
                }?;
                cases.push(report);
            }
        }
    }
    let passed = cases.iter().filter(|r| r.pass).count();
    let report = VerifyReport {
        suite: inputs.suite,
        seed: inputs.seed,
        pass: passed == cases.len(),
        passed,
        failed: cases.len() - passed,
        cases: cases.into_iter().enumerate().map(|(case, report)| CaseReport { case, report }).collect(),
    };
    let pass = report.pass;
    Ok(Outcome { output: serde_json::to_value(&report)?, pass })
}

fn constant_context(rng: &mut SuiteRng, given: Option<&StarContext>, n: usize) -> StarContext {
    match given {
        Some(ctx) => ctx.clone(),
        None => StarContext::from_matrix(&random_antisymmetric(rng, n), StarContext::mu_coupling())
            .expect("random antisymmetric matrix"),
    }
}

fn lambda_text(ctx: &StarContext) -> String {
    ctx.constant_matrix().map(|m| m.to_string()).unwrap_or_default()
}

fn associativity(rng: &mut SuiteRng, given: Option<&StarContext>, case: usize) -> CliResult<Report> {
    let ctx = constant_context(rng, given, [2, 3, 4][case % 3]);
    let n = ctx.n();
    let f = random_poly(rng, n, 3, 4);
    let g = random_poly(rng, n, 3, 4);
    let h = random_poly(rng, n, 3, 4);
    let left = star(&ctx, &star(&ctx, &f, &g)?, &h)?;
    let right = star(&ctx, &f, &star(&ctx, &g, &h)?)?;
    let w = witness([("lambda", lambda_text(&ctx)), ("f", f.to_string()), ("g", g.to_string()), ("h", h.to_string())]);
    Ok(check(left == right, "(f*g)*h = f*(g*h)", w))
}

fn intertwiner(rng: &mut SuiteRng, given: Option<&StarContext>, case: usize) -> CliResult<Report> {
    let ctx = match given {
        Some(ctx) => ctx.clone(),
        None => StarContext::weyl(1 + case % 2),
    };
    let n = ctx.n();
    let c = ctx.coupling().clone();
    let k = OrderingK::new(random_symmetric(rng, n))?;
    let f = random_poly(rng, n, 3, 4);
    let g = random_poly(rng, n, 3, 4);
    let fk = intertwine(&k.neg(), &f, &c)?;
    let gk = intertwine(&k.neg(), &g, &c)?;
    let conjugated = intertwine(&k, &star(&ctx, &fk, &gk)?, &c)?;
    let ordered = star_k_ordered(&ctx, &k, &f, &g)?;
    let w = witness([("K", k.matrix().to_string()), ("f", f.to_string()), ("g", g.to_string())]);
    Ok(check(conjugated == ordered, "T_K(T_-K f * T_-K g) = f *_(Lambda+K) g", w))
}

fn cayley_case(rng: &mut SuiteRng, case: usize, order: usize) -> CliResult<Report> {
    let n = if case.is_multiple_of(2) { 2 } else { 4 };
    let a = random_matrix(rng, n);
    let b = random_cayley_domain(rng, n);
    let x = random_cayley_domain(rng, n);
    let lambda = random_invertible_antisymmetric(rng, n);
    let s = random_symmetric(rng, n);
    let base = witness([("a", a.to_string()), ("b", b.to_string())]);
    if cayley(&inverse_cayley(&x)?)? != x {
        return Ok(check(false, "C(C^-1(X)) = X", witness([("X", x.to_string())])));
    }
    let q = solve_q(&a, &b, order)?;
    if inverse_cayley(&cayley(&q)?)? != q {
        return Ok(check(false, "C^-1(C(q)) = q", base));
    }
    let sp_x = &lambda.inverse()? * &s;
    if (&SqMatrix::identity(n) + &sp_x).is_invertible() {
        let r = check_sp_pair(&lambda, &sp_x)?;
        let w = witness([("lambda", lambda.to_string()), ("X", sp_x.to_string())]);
        if !(r.lambda_x_symmetric && r.cayley_preserves_lambda) {
            return Ok(check(false, "X in sp implies C(X) in Sp", w));
        }
    }
    if !q_residual(&a, &q)?.is_zero() {
        return Ok(check(false, "dq/dt = (1+q)a(1-q)", base));
    }
    let g = solve_g(&a, &b, order)?;
    if !g_residual(&a, &q, &g)?.is_zero() {
        return Ok(check(false, "dg/dt = -tr(aq)g/2", base));
    }
    Ok(check(cayley_residual(&a, &q)?.is_zero(), "dC(q)/dt = -2aC(q)", base))
}

fn riccati_case(rng: &mut SuiteRng, order: usize) -> CliResult<Report> {
    let (a, b, c) = (small_rational(rng), small_rational(rng), small_rational(rng));
    let r = riccati_vs_moyal(&a, &b, &c, order)?;
    Ok(if r.pass {
        r
    } else {
        r.with_witness(witness([("a", a.to_string()), ("b", b.to_string()), ("c", c.to_string())]))
    })
}

fn grading(rng: &mut SuiteRng, given: Option<&StarContext>, case: usize) -> CliResult<Report> {
    let ctx = constant_context(rng, given, [2, 3, 4][case % 3]);
    let n = ctx.n();
    let (p, q) = (rng.gen_range(0..=4u32), rng.gen_range(0..=4u32));
    let f = random_homogeneous(rng, n, p, 3);
    let g = random_homogeneous(rng, n, q, 3);
    let w = witness([("lambda", lambda_text(&ctx)), ("f", f.to_string()), ("g", g.to_string())]);
    let prod = star_graded(&ctx, &decompose(&f), &decompose(&g))?;
    for (d, k, _) in prod.components() {
        if k < 0 || k as u32 > p.min(q) || d != p + q - 2 * k as u32 {
            return Ok(check(false, "component degree p+q-2k carries mu^k", w));
        }
    }
    if prod.reassemble() != star(&ctx, &f, &g)? {
        return Ok(check(false, "graded product reassembles to the plain product", w));
    }
    let value: GaussianRational = nonzero_rational(rng);
    let special = ctx.with_coupling(ParamScalar::from(value.clone()).scale(&GaussianRational::from_ratio(1, 2)))?;
    let sp = |x: &MultiPoly| specialize_mu(x, &value);
    let lhs = sp(&star(&ctx, &f, &g)?)?;
    let rhs = star(&special, &sp(&f)?, &sp(&g)?)?;
    let mut w = w;
    w.insert("mu".into(), value.to_string());
    Ok(check(lhs == rhs, "specializing mu commutes with the product", w))
}
