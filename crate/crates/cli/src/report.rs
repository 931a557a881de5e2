//! Machine-readable reports. Field order is declaration order, so the JSON
//! output has a stable key order.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    /// The worse of two statuses: error over fail over pass.
    pub fn worst(self, other: Status) -> Status {
        match (self, other) {
            (Status::Error, _) | (_, Status::Error) => Status::Error,
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            _ => Status::Pass,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// One checked property. A failure carries the elements that witness it.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub property: String,
    pub target: Option<String>,
    pub expected: bool,
    pub status: Status,
    pub instances: usize,
    pub witness: Option<Vec<String>>,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(property: impl Into<String>) -> Self {
        Check {
            property: property.into(),
            target: None,
            expected: true,
            status: Status::Pass,
            instances: 0,
            witness: None,
            detail: None,
        }
    }

    pub fn target(mut self, t: impl Into<String>) -> Self {
        self.target = Some(t.into());
        self
    }

    pub fn instances(mut self, n: usize) -> Self {
        self.instances = n;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Passes when `holds` matches the expectation; the witness is kept either
    /// way, since for a negated expectation it is the evidence.
    pub fn outcome(mut self, expected: bool, holds: bool, witness: Option<Vec<String>>) -> Self {
        self.expected = expected;
        self.status = if holds == expected { Status::Pass } else { Status::Fail };
        self.witness = witness;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub millis: u64,
}

impl Entry {
    pub fn new(name: impl Into<String>, checks: Vec<Check>, millis: u64) -> Self {
        let status = checks.iter().fold(Status::Pass, |s, c| s.worst(c.status));
        Entry { name: name.into(), status, checks, error: None, millis }
    }

    pub fn failed(name: impl Into<String>, error: impl Into<String>, millis: u64) -> Self {
        Entry { name: name.into(), status: Status::Error, checks: Vec::new(), error: Some(error.into()), millis }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub status: Status,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, entries: Vec<Entry>) -> Self {
        let status = entries.iter().fold(Status::Pass, |s, e| s.worst(e.status));
        Report { tool: "latext", version: env!("CARGO_PKG_VERSION"), command: command.into(), seed, status, entries }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_order_and_codes() {
        assert_eq!(Status::Pass.worst(Status::Fail), Status::Fail);
        assert_eq!(Status::Fail.worst(Status::Error), Status::Error);
        assert_eq!(Status::Pass.worst(Status::Pass).exit_code(), 0);
        assert_eq!(Status::Error.exit_code(), 2);
    }

    #[test]
    fn negated_expectation_keeps_witness() {
        let c = Check::new("distributive").outcome(false, false, Some(vec!["x".into()]));
        assert_eq!(c.status, Status::Pass);
        assert_eq!(c.witness.as_deref(), Some(&["x".to_string()][..]));
    }

    #[test]
    fn keys_in_declaration_order() {
        let r = Report::new("run", 7, vec![Entry::new("s", vec![Check::new("isotone")], 0)]);
        let json = r.to_json();
        let pos = |k: &str| json.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("tool") < pos("version") && pos("version") < pos("command"));
        assert!(pos("seed") < pos("status") && pos("status") < pos("entries"));
        assert_eq!(r.status, Status::Pass);
    }
}
