//! Machine-readable run reports.
//!
//! Reports serialize through `serde_json::Value`, whose maps keep keys
//! sorted, so identical runs produce identical JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::suites::SuiteOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The outcome of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: BTreeMap<String, Value>) -> Self {
        Report {
            command: command.into(),
            params,
            status: Status::Pass,
            cases: 0,
            failures: 0,
            witness: None,
            ms: 0,
            result: None,
        }
    }

    pub fn from_outcome(
        command: impl Into<String>,
        params: BTreeMap<String, Value>,
        o: SuiteOutcome,
    ) -> Self {
        let mut r = Self::new(command, params);
        r.cases = o.cases;
        r.failures = o.failures;
        r.witness = o.witness;
        r.status = if o.failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Pretty-printed JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }

    /// A short human-readable table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(s, "{:<10} {}", "command", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(s, "{:<10} {k} = {}", "param", v);
        }
        let _ = writeln!(s, "{:<10} {status}", "status");
        let _ = writeln!(s, "{:<10} {}", "cases", self.cases);
        let _ = writeln!(s, "{:<10} {}", "failures", self.failures);
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "{:<10} {w}", "witness");
        }
        if let Some(r) = &self.result {
            let _ = writeln!(s, "{:<10} {r}", "result");
        }
        let _ = writeln!(s, "{:<10} {}", "ms", self.ms);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let mut params = BTreeMap::new();
        params.insert("max_n".to_string(), Value::from(2));
        let o = SuiteOutcome {
            cases: 3,
            failures: 0,
            witness: None,
        };
        let r = Report::from_outcome("verify subdivision", params, o);
        let json = r.to_json();
        let keys: Vec<usize> = ["cases", "command", "failures", "ms", "params", "status"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(!json.contains("witness"));
        assert_eq!(json, r.clone().to_json());
        assert!(r.to_text().contains("PASS"));
    }

    #[test]
    fn failing_outcome_sets_status() {
        let o = SuiteOutcome {
            cases: 1,
            failures: 1,
            witness: Some("x".into()),
        };
        let r = Report::from_outcome("c", BTreeMap::new(), o);
        assert_eq!(r.status, Status::Fail);
        assert!(r.to_json().contains("\"fail\""));
    }
}
