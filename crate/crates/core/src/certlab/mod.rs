//! Builders and checkers: the defect tower over `K(x, y)`, prescribed
//! extension steps with (e, f) accounting, valuations centered at tower
//! elements, and degree lower bounds for limits of p-adic style sequences.
//!
//! Every builder returns a [`Certificate`] whose numeric claims carry their
//! witnesses; [`Certificate::recheck`] validates a certificate from those
//! witnesses alone.

mod classify;
mod degree;
mod piltant;
mod tower;

pub use classify::{classification_certificate, ClassificationCert};
pub use degree::{degree_bound_certificate, DegreeBoundCert};
pub use piltant::{build_piltant, DefectTowerCert, PiltantVariant};
pub use tower::{
    build_extension_step, build_finhcf_valuation, CertTower, ExtensionStep, FinhcfValuation, FinhcfVariant, StepRecord,
    TowerCert,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::FieldError;
use crate::hahn::HahnError;
use crate::homog::HomogError;
use crate::kxval::KxError;
use crate::ordgroup::GroupError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("schedule violated at i={i}: {reason}")]
    Schedule { i: usize, reason: String },
    #[error("truncation too shallow to witness level j={level}")]
    TooShallow { level: usize },
    #[error("n_i coprime to p violated at i={i} (n_i = {n}, p = {p})")]
    NotCoprime { i: usize, n: u64, p: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("construction failed its own check at level {level}: {what}")]
    Verification { level: usize, what: String },
    #[error("certificate schema: {0}")]
    Schema(String),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("{0}")]
    Hahn(#[from] HahnError),
    #[error("{0}")]
    Homog(#[from] HomogError),
    #[error("{0}")]
    Kx(#[from] KxError),
}

/// Outcome of [`fund_ineq_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiqResult {
    pub n: u64,
    pub pairs: Vec<(u64, u64)>,
    pub pass: bool,
    /// `n − Σ eᵢfᵢ`.
    pub slack: i64,
    /// `n = Σ eᵢfᵢ`: no defect.
    pub equality: bool,
}

/// `n ≥ Σ eᵢ fᵢ` over the extensions of v to an extension of degree n.
pub fn fund_ineq_check(n: u64, pairs: &[(u64, u64)]) -> Result<FiqResult, CertError> {
    if n == 0 || pairs.is_empty() || pairs.iter().any(|&(e, f)| e == 0 || f == 0) {
        return Err(CertError::Hypothesis("degree and all (e, f) must be positive".into()));
    }
    let sum = pairs
        .iter()
        .try_fold(0u64, |acc, &(e, f)| e.checked_mul(f).and_then(|ef| acc.checked_add(ef)))
        .filter(|&s| s <= i64::MAX as u64 && n <= i64::MAX as u64)
        .ok_or_else(|| CertError::Hypothesis("degree data exceeds 63 bits".into()))?;
    let slack = n as i64 - sum as i64;
    Ok(FiqResult { n, pairs: pairs.to_vec(), pass: slack >= 0, slack, equality: slack == 0 })
}

/// A versioned certificate: one body per kind, stamped with its depth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: u32,
    pub depth: usize,
    pub body: CertBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertBody {
    DefectTower(DefectTowerCert),
    DegreeLowerBound(DegreeBoundCert),
    Classification(ClassificationCert),
    FundamentalInequality(TowerCert),
}

/// The first invariant a certificate failed to re-validate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub level: Option<usize>,
    pub invariant: String,
}

impl Failure {
    pub(crate) fn at(level: usize, invariant: impl Into<String>) -> Self {
        Failure { level: Some(level), invariant: invariant.into() }
    }

    pub(crate) fn global(invariant: impl Into<String>) -> Self {
        Failure { level: None, invariant: invariant.into() }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.level {
            Some(j) => write!(f, "level j={j}: {}", self.invariant),
            None => f.write_str(&self.invariant),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecheckReport {
    pub kind: &'static str,
    pub passed: bool,
    pub failure: Option<Failure>,
}

impl Certificate {
    pub(crate) fn new(depth: usize, body: CertBody) -> Self {
        Certificate { schema_version: SCHEMA_VERSION, depth, body }
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            CertBody::DefectTower(_) => "defect-tower",
            CertBody::DegreeLowerBound(_) => "degree-lower-bound",
            CertBody::Classification(_) => "classification",
            CertBody::FundamentalInequality(_) => "fundamental-inequality",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    /// Canonical text form: compact, keys in fixed order.
    pub fn to_canonical_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("certificates serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CertError> {
        match v.get("schema_version").and_then(|s| s.as_u64()) {
            Some(s) if s == SCHEMA_VERSION as u64 => {}
            Some(s) => return Err(CertError::Schema(format!("unsupported schema_version {s}, expected {SCHEMA_VERSION}"))),
            None => return Err(CertError::Schema("missing schema_version".into())),
        }
        serde_json::from_value(v.clone()).map_err(|e| CertError::Schema(e.to_string()))
    }

    pub fn from_str(s: &str) -> Result<Self, CertError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| CertError::Schema(e.to_string()))?;
        Self::from_json(&v)
    }

    /// Re-validates every claim from the recorded witnesses.
    pub fn recheck(&self) -> RecheckReport {
        let result = match &self.body {
            CertBody::DefectTower(c) => c.recheck(self.depth),
            CertBody::DegreeLowerBound(c) => c.recheck(self.depth),
            CertBody::Classification(_) if self.depth != 1 => {
                Err(Failure::global(format!("depth {} but a classification witnesses exactly one level", self.depth)))
            }
            CertBody::Classification(c) => c.recheck(),
            CertBody::FundamentalInequality(c) => c.recheck(self.depth),
        };
        RecheckReport { kind: self.kind(), passed: result.is_ok(), failure: result.err() }
    }
}
