//! JSON reports with a digest over everything except timing.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::verify::CheckRecord;

pub const SCHEMA: &str = "ramond-cas/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
    /// Computed tables that are recorded but not asserted.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(suite: impl Into<String>, bound: Option<i64>, checks: Vec<CheckRecord>, data: BTreeMap<String, Value>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        let mut r =
            Report { schema: SCHEMA, suite: suite.into(), tool_version: TOOL_VERSION, bound, summary, checks, data, digest: String::new(), timing: None };
        r.digest = r.compute_digest();
        r
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn with_timing(mut self, elapsed_ms: u128) -> Self {
        self.timing = Some(Timing { elapsed_ms });
        self
    }

    /// sha256 of the report serialized without `digest` and `timing`.
    pub fn compute_digest(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("digest");
            map.remove("timing");
        }
        let bytes = serde_json::to_vec(&v).expect("value serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Merges per-suite reports into one, preserving order.
pub fn merge(name: &str, bound: Option<i64>, parts: Vec<Report>) -> Report {
    let mut checks = Vec::new();
    let mut data = BTreeMap::new();
    for p in parts {
        checks.extend(p.checks);
        for (k, v) in p.data {
            data.insert(format!("{}.{k}", p.suite), v);
        }
    }
    Report::new(name, bound, checks, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_timing() {
        let checks = vec![CheckRecord::boolean("a", "x=1", true, ""), CheckRecord::boolean("b", "", false, "boom")];
        let r = Report::new("demo", Some(2), checks, BTreeMap::new());
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
        let timed = r.clone().with_timing(123);
        assert_eq!(timed.compute_digest(), r.digest);
        assert_eq!(r.digest.len(), 64);
        assert!(timed.to_json().contains("\"schema\": \"ramond-cas/1\""));
    }
}
