//! Verification checks and seeded sweeps.
//!
//! Every check returns an [`Outcome`] that carries the numbers on both sides
//! of the inequality it tests, so a JSON certificate can be audited without
//! rerunning anything.

mod checks;
pub mod commands;
mod sweep;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::{
    check_carlsson, check_e47, check_frob_law, check_lem419, check_odd_split, check_ses, check_thma,
    check_total_rank_koszul, CheckName,
};
pub use sweep::{
    derive_seed, exhaustive_d1, rerun_bundle, run_sweep, to_csv, ComplexSource, Repro, RingFamily, SweepConfig,
    SweepReport, SweepSummary, VerificationCase,
};

/// JSON schema version of every certificate the harness writes.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Precondition not met; the check did not apply.
    Skipped,
    /// Violation recorded in research mode.
    Archived,
    /// Internal invariant violation.
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub check: String,
    pub status: Status,
    pub quantities: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Outcome {
    pub(crate) fn skipped(check: &str, reason: String) -> Self {
        Outcome {
            check: check.into(),
            status: Status::Skipped,
            quantities: BTreeMap::new(),
            note: Some(reason),
        }
    }

    pub(crate) fn error(check: &str, reason: String) -> Self {
        Outcome {
            check: check.into(),
            status: Status::Error,
            quantities: BTreeMap::new(),
            note: Some(reason),
        }
    }
}

/// Process exit code for a batch of outcomes: 3 on an internal error,
/// 1 on a failed check, 0 otherwise.
pub fn exit_code<'a>(outcomes: impl IntoIterator<Item = &'a Outcome>) -> i32 {
    let mut code = 0;
    for o in outcomes {
        match o.status {
            Status::Error => return 3,
            Status::Fail => code = 1,
            _ => {}
        }
    }
    code
}

impl crate::error::Error {
    /// Whether the error signals a defect rather than bad input.
    pub fn is_internal(&self) -> bool {
        use crate::error::Error::*;
        matches!(self, BasisExtraction { .. } | SimplicialIdentity(_) | Exhausted { .. })
    }

    /// CLI exit code for the error: 3 for internal defects, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.is_internal() {
            3
        } else {
            2
        }
    }
}
