//! Certificates: the recorded outcome of checking one claim on one input.

use serde::Serialize;

use coble_core::rep::Check;

use crate::claims::lookup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

/// Inputs that determine a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub budget: u64,
    pub form_source: Option<String>,
    pub form_hash: Option<String>,
}

impl Params {
    pub fn exact(seed: u64, trials: usize, budget: u64) -> Self {
        Params { field: "Q".into(), seed, trials, budget, form_source: None, form_hash: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub claim_id: String,
    pub statement: String,
    pub params: Params,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub witnesses: Vec<serde_json::Value>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Certificate {
    /// An empty certificate for a registered claim. Panics on an unknown id, which is a
    /// programming error caught by the registry tests.
    pub fn new(claim_id: &str, params: Params) -> Self {
        let claim = lookup(claim_id).unwrap_or_else(|| panic!("claim {claim_id} is not registered"));
        Certificate {
            claim_id: claim_id.to_string(),
            statement: claim.statement.clone(),
            params,
            verdict: Verdict::Inconclusive,
            checks: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            reason: None,
            runtime_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn inconclusive(&mut self, reason: impl Into<String>) {
        self.reason = Some(reason.into());
    }

    /// Fixes the verdict: inconclusive when a reason was recorded or nothing was checked,
    /// otherwise pass exactly when every check passed.
    pub fn finish(mut self) -> Self {
        self.verdict = if self.checks.iter().any(|c| !c.passed) {
            Verdict::Fail
        } else if self.reason.is_some() || self.checks.is_empty() {
            if self.reason.is_none() {
                self.reason = Some("no checks were run".into());
            }
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// All certificates of one `verify` run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateBundle {
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
}

impl CertificateBundle {
    pub fn new(suite: &str, certificates: Vec<Certificate>) -> Self {
        let verdict = certificates.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Inconclusive);
        CertificateBundle { tool: "coble".into(), version: env!("CARGO_PKG_VERSION").into(), suite: suite.into(), verdict, certificates }
    }

    /// 0 when every claim passed, 1 on any failure, 2 when something was inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize") + "\n"
    }

    /// One aligned line per claim.
    pub fn to_text(&self) -> String {
        let width = self.certificates.iter().map(|c| c.claim_id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.certificates {
            let verdict = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Inconclusive => "INCONCLUSIVE",
            };
            let passed = c.checks.iter().filter(|k| k.passed).count();
            let mut line = format!("{:<width$}  {verdict:<12}  {passed}/{} checks", c.claim_id, c.checks.len());
            if let Some(r) = &c.reason {
                line.push_str(&format!("  ({r})"));
            }
            for k in c.checks.iter().filter(|k| !k.passed) {
                line.push_str(&format!("\n{:width$}    failed: {} {}", "", k.name, k.detail));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}
