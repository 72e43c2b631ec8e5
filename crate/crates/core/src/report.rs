//! Verification reports: one record per check, serialized as versioned JSON or
//! as plain text.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::verdict::Status;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// The statement the check exercises.
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
    pub bound: Value,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub suite: String,
    pub params: Value,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl VerificationReport {
    pub fn new(suite: &str, params: Value) -> VerificationReport {
        VerificationReport { version: SCHEMA_VERSION, suite: suite.into(), params, checks: Vec::new() }
    }

    /// Runs `f` and records its verdict with the elapsed time.
    pub fn run(&mut self, name: &str, anchor: &str, bound: Value, f: impl FnOnce() -> (Status, Value)) {
        let start = Instant::now();
        let (status, witness) = f();
        self.push(CheckResult {
            name: name.into(),
            anchor: anchor.into(),
            status,
            witness,
            bound,
            ms: start.elapsed().as_millis() as u64,
        });
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    /// Fail iff any check fails; inconclusive and skipped never mask a failure.
    pub fn overall(&self) -> Status {
        self.checks.iter().fold(Status::Pass, |acc, c| acc.and(c.status))
    }

    pub fn warnings(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c.status, Status::BoundedInconclusive | Status::SkippedHypothesis)).count()
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.overall() == Status::Fail {
            1
        } else {
            0
        }
    }

    pub fn without_timing(&self) -> VerificationReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "suite {} (schema {})", self.suite, self.version).unwrap();
        if !self.params.is_null() {
            writeln!(s, "params {}", self.params).unwrap();
        }
        for c in &self.checks {
            writeln!(s, "[{}] {} ({} ms)", c.status, c.name, c.ms).unwrap();
            writeln!(s, "    anchor: {}", c.anchor).unwrap();
            if !c.bound.is_null() {
                writeln!(s, "    bound: {}", c.bound).unwrap();
            }
            if !c.witness.is_null() {
                writeln!(s, "    witness: {}", c.witness).unwrap();
            }
        }
        writeln!(s, "overall: {} ({} checks, {} warnings)", self.overall(), self.checks.len(), self.warnings()).unwrap();
        s
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}
