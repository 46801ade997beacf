use serde::{Deserialize, Serialize};
use serde_json::Value;
use starquant::algebra::PolyRepr;
use starquant::graded::{decompose, degree_mu_table, h0_dim, specialize_mu, GradedElement};
use starquant::matrix::{closed_star_exponential, quadratic_form, riccati_1d, riccati_vs_moyal, RiccatiSolution};
use starquant::star::{intertwine, ode_star_exponential, star, star_k_ordered};
use starquant::{GaussianRational, MultiPoly, OrderingK, ParamScalar, Report, SqMatrix, StarContext, TruncSeries};

use crate::error::{CliError, CliResult};
use crate::job::{max_degree, resolve_poly, Command, JobSpec};
use crate::verify;

/// Result of one job: the JSON document to emit and whether every check in
/// it passed.
#[derive(Clone, PartialEq, Debug)]
pub struct Outcome {
    pub output: Value,
    pub pass: bool,
}

impl Outcome {
    fn new<T: Serialize>(result: &T, pass: bool) -> CliResult<Self> {
        Ok(Outcome { output: serde_json::to_value(result)?, pass })
    }
}

pub fn run(job: &JobSpec) -> CliResult<Outcome> {
    let cap = max_degree()?;
    match job.command {
        Command::Star => run_star(job, cap),
        Command::StarExp => run_star_exp(job),
        Command::Riccati => run_riccati(job),
        Command::Ordering => run_ordering(job, cap),
        Command::Grade => run_grade(job, cap),
        Command::Verify => verify::run_verify(job, cap),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StarInputs {
    f: PolyRepr,
    g: PolyRepr,
    #[serde(default)]
    mu: Option<GaussianRational>,
}

#[derive(Serialize)]
struct Specialized {
    mu: GaussianRational,
    poly: MultiPoly,
    text: String,
}

#[derive(Serialize)]
struct StarOutput {
    n: usize,
    product: MultiPoly,
    text: String,
    graded: GradedElement,
    #[serde(skip_serializing_if = "Option::is_none")]
    specialized: Option<Specialized>,
}

fn run_star(job: &JobSpec, cap: u32) -> CliResult<Outcome> {
    let inputs: StarInputs = job.inputs()?;
    let ctx = job.require_context(cap)?;
    let n = ctx.n();
    let f = resolve_poly(&inputs.f, n, cap)?;
    let g = resolve_poly(&inputs.g, n, cap)?;
    let product = star(&ctx, &f, &g)?;
    let specialized = match inputs.mu {
        None => None,
        Some(mu) => {
            let p = specialize_mu(&product, &mu)?;
            Some(Specialized { mu, text: p.to_string(), poly: p })
        }
    };
    let out = StarOutput { n, text: product.to_string(), graded: decompose(&product), product, specialized };
    Outcome::new(&out, true)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StarExpInputs {
    #[serde(rename = "A")]
    a: SqMatrix,
    #[serde(default)]
    at_t_equals_one: bool,
}

#[derive(Serialize)]
struct OrderRow {
    order: usize,
    components: Vec<DegreeMu>,
}

#[derive(Serialize)]
struct DegreeMu {
    degree: u32,
    mu: i32,
}

#[derive(Serialize)]
struct AtOne {
    formal_only: bool,
    amplitude: GaussianRational,
    phase: SqMatrix,
}

#[derive(Serialize)]
struct StarExpOutput {
    n: usize,
    truncation: usize,
    amplitude: TruncSeries<GaussianRational>,
    phase: TruncSeries<SqMatrix>,
    oracle: Report,
    table: Vec<OrderRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_t_equals_one: Option<AtOne>,
}

fn run_star_exp(job: &JobSpec) -> CliResult<Outcome> {
    let inputs: StarExpInputs = job.inputs()?;
    let ctx = job.require_context(max_degree()?)?;
    if *ctx.coupling() != StarContext::mu_coupling() {
        return Err(CliError::precondition("star-exp needs the coupling mu/2"));
    }
    let lambda = ctx.constant_matrix().ok_or(starquant::Error::NonConstantLambda)?;
    let order = job.truncation;
    let closed = closed_star_exponential(&lambda, &inputs.a, order)?;
    let expanded = closed.expand()?;
    let inv_mu = ParamScalar::mu().try_inverse().expect("mu is invertible");
    let oracle_series = ode_star_exponential(&ctx, &quadratic_form(&inputs.a).scale(&inv_mu), order)?;
    let oracle = Report::compare(&expanded, &oracle_series)?;
    let table = expanded
        .coeffs()
        .iter()
        .enumerate()
        .map(|(order, c)| OrderRow {
            order,
            components: degree_mu_table(c).into_iter().map(|(degree, mu)| DegreeMu { degree, mu }).collect(),
        })
        .collect();
    let at_one = inputs.at_t_equals_one.then(|| AtOne {
        formal_only: true,
        amplitude: closed.amplitude.coeffs().iter().fold(GaussianRational::from_integer(0), |acc, c| acc + c),
        phase: closed.phase.coeffs().iter().fold(SqMatrix::zero(ctx.n()), |acc, c| &acc + c),
    });
    let pass = oracle.pass;
    let out = StarExpOutput {
        n: ctx.n(),
        truncation: order,
        amplitude: closed.amplitude,
        phase: closed.phase,
        oracle,
        table,
        at_t_equals_one: at_one,
    };
    Outcome::new(&out, pass)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RiccatiInputs {
    a: GaussianRational,
    b: GaussianRational,
    c: GaussianRational,
}

#[derive(Serialize)]
struct RiccatiOutput {
    solution: RiccatiSolution,
    oracle: Report,
}

fn run_riccati(job: &JobSpec) -> CliResult<Outcome> {
    let inputs: RiccatiInputs = job.inputs()?;
    if job.context.is_some() {
        return Err(CliError::input("riccati works in the fixed Weyl context and takes no context"));
    }
    let solution = riccati_1d(&inputs.a, &inputs.b, &inputs.c, job.truncation);
    let oracle = riccati_vs_moyal(&inputs.a, &inputs.b, &inputs.c, job.truncation)?;
    let pass = oracle.pass;
    Outcome::new(&RiccatiOutput { solution, oracle }, pass)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KSpec {
    Named(String),
    Matrix(SqMatrix),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderingInputs {
    #[serde(rename = "K")]
    k: KSpec,
    f: PolyRepr,
    #[serde(default)]
    g: Option<PolyRepr>,
    #[serde(default)]
    n: Option<usize>,
}

#[derive(Serialize)]
struct OrderedProduct {
    g: MultiPoly,
    product: MultiPoly,
    text: String,
    identity: Report,
}

#[derive(Serialize)]
struct OrderingOutput {
    n: usize,
    #[serde(rename = "K")]
    k: SqMatrix,
    f: MultiPoly,
    ordered: MultiPoly,
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<OrderedProduct>,
}

fn ordering_matrix(spec: KSpec, n: usize) -> CliResult<OrderingK> {
    let half = |name: &str| {
        if n % 2 == 1 {
            Err(CliError::precondition(format!("the {name} ordering needs an even number of variables")))
        } else {
            Ok(n / 2)
        }
    };
    match spec {
        KSpec::Matrix(k) => Ok(OrderingK::new(k)?),
        KSpec::Named(name) => match name.as_str() {
            "weyl" => Ok(OrderingK::new(SqMatrix::zero(n))?),
            "normal" => Ok(OrderingK::normal(half("normal")?)),
            "anti-normal" => Ok(OrderingK::anti_normal(half("anti-normal")?)),
            other => Err(CliError::input(format!(
                "unknown ordering `{other}`; expected weyl, normal, anti-normal or a matrix"
            ))),
        },
    }
}

fn run_ordering(job: &JobSpec, cap: u32) -> CliResult<Outcome> {
    let inputs: OrderingInputs = job.inputs()?;
    let ctx = match job.context(cap)? {
        Some(ctx) => ctx,
        None => {
            let n = match (&inputs.k, inputs.n) {
                (KSpec::Matrix(k), _) => k.dim(),
                (KSpec::Named(_), Some(n)) => n,
                (KSpec::Named(_), None) => {
                    return Err(CliError::input("a named ordering without a context needs `n`"));
                }
            };
            if n % 2 == 1 {
                return Err(CliError::precondition("the Weyl context needs an even number of variables"));
            }
            StarContext::weyl(n / 2)
        }
    };
    let n = ctx.n();
    if inputs.n.is_some_and(|m| m != n) {
        return Err(CliError::precondition(format!("`n` disagrees with the context dimension {n}")));
    }
    let k = ordering_matrix(inputs.k, n)?;
    let c = ctx.coupling().clone();
    let f = resolve_poly(&inputs.f, n, cap)?;
    let ordered = intertwine(&k, &f, &c)?;
    let product = match &inputs.g {
        None => None,
        Some(g) => {
            let g = resolve_poly(g, n, cap)?;
            let product = star_k_ordered(&ctx, &k, &f, &g)?;
            let fk = intertwine(&k.neg(), &f, &c)?;
            let gk = intertwine(&k.neg(), &g, &c)?;
            let conjugated = intertwine(&k, &star(&ctx, &fk, &gk)?, &c)?;
            let identity =
                Report::compare(&TruncSeries::new(vec![conjugated]), &TruncSeries::new(vec![product.clone()]))?;
            Some(OrderedProduct { g, text: product.to_string(), product, identity })
        }
    };
    let pass = product.as_ref().is_none_or(|p| p.identity.pass);
    let out = OrderingOutput { n, k: k.matrix().clone(), f, text: ordered.to_string(), ordered, product };
    Outcome::new(&out, pass)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GradeInputs {
    f: PolyRepr,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    mu: Option<GaussianRational>,
}

#[derive(Serialize)]
struct DegreeDim {
    degree: u32,
    h0_dim: u128,
}

#[derive(Serialize)]
struct GradeOutput {
    n: usize,
    graded: GradedElement,
    table: Vec<DegreeMu>,
    h0_dims: Vec<DegreeDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    specialized: Option<Specialized>,
}

fn run_grade(job: &JobSpec, cap: u32) -> CliResult<Outcome> {
    let inputs: GradeInputs = job.inputs()?;
    let n = match (job.context(cap)?, inputs.n) {
        (Some(ctx), Some(n)) if ctx.n() != n => {
            return Err(CliError::precondition(format!("`n` = {n} disagrees with the context dimension {}", ctx.n())));
        }
        (Some(ctx), _) => ctx.n(),
        (None, Some(n)) => n,
        (None, None) => return Err(CliError::input("grade needs `n` or a context")),
    };
    if n == 0 {
        return Err(CliError::precondition("grade needs at least one variable"));
    }
    let f = resolve_poly(&inputs.f, n, cap)?;
    let graded = decompose(&f);
    let table: Vec<DegreeMu> = graded.keys().into_iter().map(|(degree, mu)| DegreeMu { degree, mu }).collect();
    let mut degrees: Vec<u32> = table.iter().map(|r| r.degree).collect();
    degrees.dedup();
    let h0_dims =
        degrees.into_iter().map(|d| DegreeDim { degree: d, h0_dim: h0_dim(n as u32 - 1, i64::from(d)) }).collect();
    let specialized = match inputs.mu {
        None => None,
        Some(mu) => {
            let p = specialize_mu(&f, &mu)?;
            Some(Specialized { mu, text: p.to_string(), poly: p })
        }
    };
    Outcome::new(&GradeOutput { n, graded, table, h0_dims, specialized }, true)
}
