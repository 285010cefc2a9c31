//! Named, reproducible checks that bundle the rest of the crate: each
//! harness returns a [`VerificationReport`], and [`default_suite`] runs
//! them over the curated registry.

mod harness;
mod registry;
mod suite;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use harness::{
    verify_agreement, verify_alpha_tau, verify_ample, verify_cg, verify_d_lemmas,
    verify_d_lemmas_sensitivity, verify_embedding, verify_embedding_free, verify_main,
    verify_prefix_presentation, verify_strongness, verify_strongness_fuzz, ConstructedMap,
};
pub use registry::{
    constructed_premorphisms, inverse_registry, monoid_registry, restriction_registry, NamedAlgebra,
    NamedMonoid,
};
pub use suite::{default_suite, run_suite, SuiteOptions, SuiteSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The instance does not meet the harness's hypothesis.
    Skipped,
    /// Enumeration did not close within the bound.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One harness run on one instance. A failing report always carries a
/// witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl VerificationReport {
    fn new(theorem: &str, instance: &str, status: Status) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            instance: instance.to_string(),
            status,
            witness: None,
            detail: None,
            wall_ms: None,
        }
    }

    pub fn pass(theorem: &str, instance: &str) -> Self {
        Self::new(theorem, instance, Status::Pass)
    }

    pub fn fail(theorem: &str, instance: &str, witness: impl Into<String>) -> Self {
        let mut r = Self::new(theorem, instance, Status::Fail);
        r.witness = Some(witness.into());
        r
    }

    pub fn skipped(theorem: &str, instance: &str, reason: impl Into<String>) -> Self {
        Self::new(theorem, instance, Status::Skipped).with_detail(reason)
    }

    pub fn inconclusive(theorem: &str, instance: &str, reason: impl Into<String>) -> Self {
        Self::new(theorem, instance, Status::Inconclusive).with_detail(reason)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }

    /// Drops the timing so that output is reproducible byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        self
    }
}

/// Runs `f`, stamping the report with its wall time.
pub(crate) fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut r = f();
    r.wall_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    r
}
