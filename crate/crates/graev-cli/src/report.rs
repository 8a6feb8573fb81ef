//! Machine-readable run reports with a stable layout: identical inputs,
//! flags, and seed produce byte-identical JSON except for the trailing
//! wall-time field.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Check {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), outcome: Outcome::Pass, detail: detail.into(), witness: None }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), outcome: Outcome::Fail, detail: detail.into(), witness: None }
    }

    pub fn inconclusive(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            outcome: Outcome::Inconclusive,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub digest: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            seed: None,
            trials: None,
            inputs: Vec::new(),
            checks: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.checks.iter().any(|c| c.outcome == Outcome::Fail) {
            1
        } else if self.checks.iter().any(|c| c.outcome == Outcome::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with the wall-time field zeroed, for determinism
    /// comparisons.
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        clone.wall_time_ms = 0;
        clone.to_json()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,outcome,detail\n");
        for c in &self.checks {
            let outcome = match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "fail",
                Outcome::Inconclusive => "inconclusive",
            };
            out.push_str(&format!(
                "{},{},\"{}\"\n",
                c.name,
                outcome,
                c.detail.replace('"', "\"\"")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        let mut r = RunReport::new("x");
        assert_eq!(r.exit_code(), 0);
        r.checks.push(Check::inconclusive("a", ""));
        assert_eq!(r.exit_code(), 3);
        r.checks.push(Check::fail("b", ""));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn canonical_json_hides_timing() {
        let mut r = RunReport::new("x");
        r.checks.push(Check::pass("a", "ok"));
        r.wall_time_ms = 1234;
        let mut r2 = r.clone();
        r2.wall_time_ms = 9999;
        assert_eq!(r.canonical_json(), r2.canonical_json());
        assert_ne!(r.to_json(), r2.to_json());
    }
}
