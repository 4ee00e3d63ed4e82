//! Machine-readable suite reports.
//!
//! Reports are deterministic: the same invocation produces byte-identical
//! output. Timing is therefore never part of the serialized report; the
//! runner prints it to standard error.

use serde::Serialize;

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Serialize, Clone, Debug)]
pub struct CaseResult {
    pub case: String,
    pub status: Status,
    /// Failure payload: the inputs as parseable literals plus both sides'
    /// normal forms, enough to reproduce the case standalone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseResult {
    pub fn pass(case: impl Into<String>) -> Self {
        CaseResult {
            case: case.into(),
            status: Status::Pass,
            detail: None,
        }
    }

    pub fn fail(case: impl Into<String>, detail: impl Into<String>) -> Self {
        CaseResult {
            case: case.into(),
            status: Status::Fail,
            detail: Some(detail.into()),
        }
    }

    pub fn from_check(case: impl Into<String>, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => CaseResult::pass(case),
            Err(detail) => CaseResult::fail(case, detail),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub grid: String,
    pub passed: usize,
    pub failed: usize,
    /// Suite-level findings, e.g. which correction variant is consistent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64, grid: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            seed,
            grid: grid.into(),
            passed: 0,
            failed: 0,
            note: None,
            cases: Vec::new(),
        }
    }

    pub fn finish(mut self, cases: Vec<CaseResult>) -> Self {
        self.passed = cases.iter().filter(|c| c.status == Status::Pass).count();
        self.failed = cases.len() - self.passed;
        self.cases = cases;
        self
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {}  seed {}  grid {}\n",
            self.suite, self.seed, self.grid
        ));
        for c in &self.cases {
            let mark = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("  [{}] {}\n", mark, c.case));
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    out.push_str(&format!("         {}\n", line));
                }
            }
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("  note: {}\n", n));
        }
        out.push_str(&format!(
            "  {} passed, {} failed\n",
            self.passed, self.failed
        ));
        out
    }
}
