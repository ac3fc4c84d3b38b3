use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const CERTIFICATE_FORMAT: &str = "belyi-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub values: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: &str, status: Status, values: Value) -> Self {
        CheckRecord {
            name: name.to_string(),
            status,
            values,
            detail: None,
            seed: None,
            wall_ms: None,
        }
    }

    pub fn failed(name: &str, err: impl std::fmt::Display) -> Self {
        CheckRecord::new(name, Status::Fail, Value::Null).with_detail(err.to_string())
    }

    pub fn skipped(name: &str, why: &str) -> Self {
        CheckRecord::new(name, Status::Skipped, Value::Null).with_detail(why.to_string())
    }

    pub fn with_detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_wall(mut self, ms: Option<u64>) -> Self {
        self.wall_ms = ms;
        self
    }
}

/// A step of the argument that is cited rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalFact {
    pub name: String,
    pub statement: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_bytes(name: &str, bytes: &[u8]) -> Self {
        use sha2::{Digest, Sha256};
        let d = Sha256::digest(bytes);
        InputDigest {
            name: name.to_string(),
            sha256: d.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub tool_version: String,
    pub prime: u32,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub number_field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_ideal: Option<String>,
    #[serde(default)]
    pub inputs: Vec<InputDigest>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub context: Context,
    pub checks: Vec<CheckRecord>,
    pub external_facts: Vec<ExternalFact>,
    pub verdict: Status,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, Status::Fail | Status::Inconclusive))
            .map(|c| c.name.as_str())
            .collect()
    }

    /// Whether some check stopped at a resource cap.
    pub fn cap_exceeded(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.values.get("cap_exceeded") == Some(&Value::Bool(true)))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Verdict is pass iff every computed check passed.
pub fn assemble_certificate(context: Context, checks: Vec<CheckRecord>, external_facts: Vec<ExternalFact>) -> Certificate {
    let ok = checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped));
    Certificate {
        format: CERTIFICATE_FORMAT.to_string(),
        context,
        checks,
        external_facts,
        verdict: Status::from_bool(ok),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn ctx() -> Context {
        Context {
            tool_version: "0".into(),
            prime: 7,
            degree: 3,
            number_field: None,
            prime_ideal: None,
            inputs: vec![InputDigest::of_bytes("map", b"abc")],
        }
    }

    #[test]
    fn verdicts_and_round_trip() {
        let checks = vec![
            CheckRecord::new("genus", Status::Pass, json!({"genus": 0})),
            CheckRecord::skipped("passport", "no triple"),
        ];
        let c = assemble_certificate(ctx(), checks.clone(), vec![]);
        assert_eq!(c.verdict, Status::Pass);
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(
            c.context.inputs[0].sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        let mut bad = checks;
        bad.push(CheckRecord::new("even_parity", Status::Fail, json!({})));
        let c = assemble_certificate(ctx(), bad, vec![]);
        assert_eq!(c.verdict, Status::Fail);
        assert_eq!(c.failing(), vec!["even_parity"]);
    }
}
