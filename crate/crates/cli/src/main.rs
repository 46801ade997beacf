use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};
use starquant_cli::{run, CliError, CliResult, JobSpec};

/// Exact star-product computations driven by JSON jobs.
///
/// Either pass a complete job with `--job`, or name a command and give its
/// inputs as flags. Polynomials use the string form (`"z0^2*z1 + 1/2*mu"`)
/// or the JSON term list; matrices are JSON arrays of rows of scalar strings.
#[derive(Parser, Debug)]
#[command(name = "starquant", version)]
struct Args {
    /// Job file (JSON)
    #[arg(long, conflicts_with = "command")]
    job: Option<PathBuf>,
    /// star, star-exp, riccati, ordering, grade or verify
    #[arg(long, required_unless_present = "job")]
    command: Option<String>,
    /// First polynomial
    #[arg(long)]
    f: Option<String>,
    /// Second polynomial
    #[arg(long)]
    g: Option<String>,
    /// Poisson matrix Λ as JSON rows of polynomials
    #[arg(long)]
    lambda: Option<String>,
    /// Contraction coupling (with --lambda)
    #[arg(long, default_value = "mu/2", requires = "lambda")]
    coupling: String,
    /// Symmetric matrix A of the quadratic exponent (star-exp)
    #[arg(long = "A")]
    a_matrix: Option<String>,
    /// Evaluate the star exponential at t = 1 (formal)
    #[arg(long)]
    t1: bool,
    /// Ordering matrix K: JSON rows or weyl, normal, anti-normal
    #[arg(long = "K")]
    k: Option<String>,
    /// Number of variables when there is no Λ
    #[arg(long)]
    n: Option<usize>,
    /// Riccati coefficients of a u² + b v² + 2c uv
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
    /// Truncation order
    #[arg(long = "N")]
    truncation: Option<usize>,
    /// Verification suite
    #[arg(long)]
    suite: Option<String>,
    /// Seed for randomized suites
    #[arg(long)]
    seed: Option<u64>,
    /// Number of cases for randomized suites
    #[arg(long)]
    cases: Option<usize>,
    /// Degree bound for the validator suites
    #[arg(long)]
    d_max: Option<u32>,
    /// Contraction-order bound for the Λ-relation suite
    #[arg(long)]
    k_max: Option<usize>,
    /// Value substituted for μ
    #[arg(long)]
    mu: Option<String>,
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn json_arg(name: &str, text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("--{name}: {e}")))
}

/// A polynomial or named-ordering flag: JSON when it looks like JSON,
/// otherwise the string form.
fn loose_arg(name: &str, text: &str) -> CliResult<Value> {
    if text.trim_start().starts_with('[') {
        json_arg(name, text)
    } else {
        Ok(Value::String(text.to_string()))
    }
}

fn job_from_flags(args: &Args) -> CliResult<JobSpec> {
    let command = args.command.clone().expect("clap requires --command without --job");
    let mut inputs = Map::new();
    let mut put = |key: &str, v: Value| {
        inputs.insert(key.to_string(), v);
    };
    if let Some(f) = &args.f {
        put("f", loose_arg("f", f)?);
    }
    if let Some(g) = &args.g {
        put("g", loose_arg("g", g)?);
    }
    if let Some(a) = &args.a_matrix {
        put("A", json_arg("A", a)?);
    }
    if args.t1 {
        put("at_t_equals_one", Value::Bool(true));
    }
    if let Some(k) = &args.k {
        put("K", loose_arg("K", k)?);
    }
    if let Some(n) = args.n {
        put("n", json!(n));
    }
    for (key, v) in [("a", &args.a), ("b", &args.b), ("c", &args.c), ("mu", &args.mu), ("suite", &args.suite)] {
        if let Some(v) = v {
            put(key, Value::String(v.clone()));
        }
    }
    if let Some(seed) = args.seed {
        put("seed", json!(seed));
    }
    if let Some(cases) = args.cases {
        put("cases", json!(cases));
    }
    if let Some(d) = args.d_max {
        put("d_max", json!(d));
    }
    if let Some(k) = args.k_max {
        put("k_max", json!(k));
    }
    let mut job = Map::new();
    job.insert("command".into(), Value::String(command));
    job.insert("inputs".into(), Value::Object(inputs));
    if let Some(lambda) = &args.lambda {
        let rows = json_arg("lambda", lambda)?;
        let n = rows.as_array().map_or(0, Vec::len);
        job.insert("context".into(), json!({"n": n, "lambda": rows, "coupling": args.coupling}));
    }
    if let Some(t) = args.truncation {
        job.insert("truncation".into(), json!(t));
    }
    JobSpec::from_value(Value::Object(job))
}

fn execute(args: &Args) -> CliResult<bool> {
    let job = match &args.job {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            JobSpec::parse(&text)?
        }
        None => job_from_flags(args)?,
    };
    let outcome = run(&job)?;
    let mut text = serde_json::to_string_pretty(&outcome.output)?;
    text.push('\n');
    match args.out.as_ref().or(job.output_path.as_ref()) {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("starquant: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
