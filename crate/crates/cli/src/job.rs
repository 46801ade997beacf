use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use starquant::algebra::PolyRepr;
use starquant::{MultiPoly, StarContext};

use crate::error::{CliError, CliResult};

pub const MAX_DEGREE_VAR: &str = "STARQUANT_MAX_DEGREE";
pub const DEFAULT_MAX_DEGREE: u32 = 16;
pub const DEFAULT_TRUNCATION: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Star,
    StarExp,
    Riccati,
    Ordering,
    Grade,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Star => "star",
            Command::StarExp => "star-exp",
            Command::Riccati => "riccati",
            Command::Ordering => "ordering",
            Command::Grade => "grade",
            Command::Verify => "verify",
        }
    }
}

/// One batch job. The context stays raw JSON until [`JobSpec::context`] so
/// that an invalid `Λ` is reported as a precondition failure rather than a
/// schema error.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<Value>,
    #[serde(default = "empty_object")]
    pub inputs: Value,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

impl JobSpec {
    pub fn from_value(value: Value) -> CliResult<Self> {
        let job: JobSpec = serde_json::from_value(value)?;
        if job.truncation < 1 {
            return Err(CliError::input("truncation must be at least 1"));
        }
        Ok(job)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }

    /// The command payload, decoded with a strict schema.
    pub fn inputs<T: DeserializeOwned>(&self) -> CliResult<T> {
        serde_json::from_value(self.inputs.clone())
            .map_err(|e| CliError::input(format!("inputs for `{}`: {e}", self.command.name())))
    }

    pub fn context(&self, cap: u32) -> CliResult<Option<StarContext>> {
        let Some(raw) = &self.context else {
            return Ok(None);
        };
        let ctx = StarContext::from_json(raw)?;
        let n = ctx.n();
        for i in 0..n {
            for j in 0..n {
                check_degree(ctx.lambda(i, j), cap)?;
            }
        }
        Ok(Some(ctx))
    }

    pub fn require_context(&self, cap: u32) -> CliResult<StarContext> {
        self.context(cap)?.ok_or_else(|| CliError::input(format!("`{}` needs a context", self.command.name())))
    }
}

/// The input degree cap from the environment.
pub fn max_degree() -> CliResult<u32> {
    match std::env::var(MAX_DEGREE_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_DEGREE),
        Err(e) => Err(CliError::input(format!("{MAX_DEGREE_VAR}: {e}"))),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("{MAX_DEGREE_VAR} must be a non-negative integer, got `{s}`"))),
    }
}

pub fn check_degree(p: &MultiPoly, cap: u32) -> CliResult<()> {
    match p.degree() {
        Some(d) if d > cap => Err(starquant::Error::DegreeCap { degree: d, cap }.into()),
        _ => Ok(()),
    }
}

pub fn resolve_poly(repr: &PolyRepr, nvars: usize, cap: u32) -> CliResult<MultiPoly> {
    let p = repr.resolve(nvars)?;
    check_degree(&p, cap)?;
    Ok(p)
}
