use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Coefficient, TruncSeries};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ResidualNorm {
    #[serde(rename = "exact-zero")]
    ExactZero,
    #[serde(rename = "nonzero")]
    Nonzero,
}

/// Outcome of an exact comparison or validator sweep.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub pass: bool,
    pub first_divergence_order: Option<usize>,
    pub residual_norm: ResidualNorm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

impl Report {
    pub fn passed() -> Self {
        Report { pass: true, first_divergence_order: None, residual_norm: ResidualNorm::ExactZero, witness: None }
    }

    pub fn failed(order: Option<usize>, witness: BTreeMap<String, String>) -> Self {
        Report {
            pass: false,
            first_divergence_order: order,
            residual_norm: ResidualNorm::Nonzero,
            witness: Some(witness),
        }
    }

    /// Pass iff every coefficient of `residual` vanishes.
    pub fn from_residual<R: Coefficient>(residual: &TruncSeries<R>) -> Self {
        match residual.valuation() {
            None => Self::passed(),
            Some(k) => Report {
                pass: false,
                first_divergence_order: Some(k),
                residual_norm: ResidualNorm::Nonzero,
                witness: None,
            },
        }
    }

    /// Compare two series of equal order coefficient by coefficient.
    pub fn compare<R: Coefficient>(lhs: &TruncSeries<R>, rhs: &TruncSeries<R>) -> Result<Self> {
        Ok(Self::from_residual(&lhs.checked_sub(rhs)?))
    }

    pub fn with_witness(mut self, witness: BTreeMap<String, String>) -> Self {
        self.witness = Some(witness);
        self
    }
}

impl TryFrom<&serde_json::Value> for Report {
    type Error = Error;
    fn try_from(v: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}
