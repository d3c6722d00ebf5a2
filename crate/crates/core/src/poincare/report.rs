use std::time::Duration;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::algebra::{Mode, NCPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "FAIL")]
    Fail,
}

impl CheckStatus {
    /// The more severe of two statuses (`Fail` > `Inconclusive` > `Pass`).
    pub fn worst(self, other: CheckStatus) -> CheckStatus {
        self.max(other)
    }
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
            CheckStatus::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check_id: String,
    pub status: CheckStatus,
    /// First nonzero component residual, or zero.
    pub residual: NCPolynomial,
    pub elapsed: Duration,
    pub note: Option<String>,
}

impl Serialize for CheckResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckResult", 5)?;
        st.serialize_field("check_id", &self.check_id)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("residual_text", &self.residual.to_string())?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_secs_f64() * 1e3))?;
        st.serialize_field("note", &self.note)?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub mode: Mode,
    pub degree_cutoff: u32,
    pub checks: Vec<CheckResult>,
    /// Engine-level findings such as inconsistencies between related checks.
    pub flags: Vec<String>,
}

impl VerificationReport {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn overall(&self) -> CheckStatus {
        let base = if self.flags.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.checks.iter().fold(base, |acc, c| acc.worst(c.status))
    }
}
