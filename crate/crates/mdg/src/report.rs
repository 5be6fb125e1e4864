//! Machine-readable verification reports.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Stated without a machine check, e.g. beyond the searchable sizes.
    PaperAsserted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::PaperAsserted => "paper-asserted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// What the claim is about, e.g. `group order` or `distance diagram`.
    pub anchor: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    pub runtime_ms: u64,
}

impl Claim {
    /// Passes iff `computed == expected`.
    pub fn compare(id: &str, anchor: &str, computed: Value, expected: Value, runtime_ms: u64) -> Self {
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Claim {
            id: id.into(),
            anchor: anchor.into(),
            status,
            computed,
            expected,
            runtime_ms,
        }
    }

    pub fn with_status(id: &str, anchor: &str, status: Status, computed: Value, expected: Value, runtime_ms: u64) -> Self {
        Claim {
            id: id.into(),
            anchor: anchor.into(),
            status,
            computed,
            expected,
            runtime_ms,
        }
    }

    /// Runs `f` and compares its result with `expected`; an error is a failure.
    pub fn check<T: Serialize, E: std::fmt::Display>(
        id: &str,
        anchor: &str,
        expected: Value,
        f: impl FnOnce() -> Result<T, E>,
    ) -> Self {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_millis() as u64;
        match out {
            Ok(v) => Claim::compare(id, anchor, serde_json::to_value(v).expect("serializable"), expected, ms),
            Err(e) => Claim::with_status(id, anchor, Status::Fail, Value::String(format!("error: {e}")), expected, ms),
        }
    }
}

/// A note attached to the report that is neither pass nor fail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Note {
    pub id: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            claims: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, claim: Claim) {
        debug_assert!(self.claims.iter().all(|c| c.id != claim.id), "duplicate claim {}", claim.id);
        self.claims.push(claim);
    }

    pub fn note(&mut self, id: &str, text: impl Into<String>) {
        self.notes.push(Note {
            id: id.into(),
            text: text.into(),
        });
    }

    pub fn failed(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    /// Zeroes all runtimes, making the report byte-for-byte reproducible.
    pub fn strip_timings(&mut self) {
        for c in &mut self.claims {
            c.runtime_ms = 0;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per claim: status, id, computed value and, on failure, the expectation.
    pub fn to_text(&self) -> String {
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.claims {
            let _ = write!(out, "{:<14} {:<width$}  {}", c.status.as_str(), c.id, compact(&c.computed));
            if c.status == Status::Fail {
                let _ = write!(out, "  (expected {})", compact(&c.expected));
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "{:<14} {:<width$}  {}", "note", n.id, n.text);
        }
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} skipped, {} paper-asserted",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.count(Status::PaperAsserted)
        );
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_code_ignores_non_failures() {
        let mut r = Report::new("test");
        r.push(Claim::compare("a", "x", json!(1), json!(1), 0));
        r.push(Claim::with_status("b", "x", Status::Skipped, Value::Null, json!(2), 0));
        r.push(Claim::with_status("c", "x", Status::PaperAsserted, Value::Null, json!(3), 0));
        assert_eq!(r.exit_code(), 0);
        r.push(Claim::compare("d", "x", json!(1), json!(2), 0));
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().contains("1 pass, 1 fail, 1 skipped, 1 paper-asserted"));
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("test");
        r.push(Claim::check("ok", "x", json!(4), || Ok::<_, String>(4)));
        r.push(Claim::check("err", "x", json!(4), || Err::<u32, _>("boom")));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.claims[1].status, Status::Fail);
        assert!(r.to_json().contains("\"status\": \"pass\""));
    }
}
