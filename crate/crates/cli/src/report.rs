//! Report tree `suite -> check -> {status, observed, expected, witnesses}`,
//! rendered either as JSON or as a plain table. Insertion order is kept, so
//! identical runs give byte-identical output.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write;

/// Witnesses kept per failing check.
pub const WITNESS_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported values with nothing to compare against.
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub status: Status,
    pub observed: Value,
    pub expected: Value,
    pub witnesses: Vec<Value>,
}

impl Check {
    pub fn info(observed: Value) -> Self {
        Check { status: Status::Info, observed, expected: Value::Null, witnesses: Vec::new() }
    }

    /// Pass iff `observed == expected`; a failure carries `witness`.
    pub fn compare(observed: Value, expected: Value, witness: Value) -> Self {
        let ok = observed == expected;
        Check {
            status: Status::from_bool(ok),
            observed,
            expected,
            witnesses: if ok { Vec::new() } else { vec![witness] },
        }
    }

    /// Pass iff `witnesses` is empty; at most `WITNESS_LIMIT` are kept.
    pub fn absent(observed: Value, expected: Value, witnesses: Vec<Value>) -> Self {
        let status = Status::from_bool(witnesses.is_empty());
        Check { status, observed, expected, witnesses: witnesses.into_iter().take(WITNESS_LIMIT).collect() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    command: String,
    suites: Vec<(String, Vec<(String, Check)>)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), suites: Vec::new() }
    }

    pub fn push(&mut self, suite: &str, check: impl Into<String>, c: Check) {
        let idx = match self.suites.iter().position(|(s, _)| s == suite) {
            Some(i) => i,
            None => {
                self.suites.push((suite.to_string(), Vec::new()));
                self.suites.len() - 1
            }
        };
        self.suites[idx].1.push((check.into(), c));
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, &str, &Check)> {
        self.suites.iter().flat_map(|(s, cs)| cs.iter().map(move |(n, c)| (s.as_str(), n.as_str(), c)))
    }

    pub fn failures(&self) -> usize {
        self.checks().filter(|(_, _, c)| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let mut suites = Map::new();
        for (s, cs) in &self.suites {
            let mut checks = Map::new();
            for (n, c) in cs {
                checks.insert(n.clone(), serde_json::to_value(c).expect("plain data"));
            }
            suites.insert(s.clone(), Value::Object(checks));
        }
        let total = self.checks().count();
        json!({
            "command": self.command,
            "suites": suites,
            "summary": { "checks": total, "failed": self.failures() },
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain data");
        s.push('\n');
        s
    }

    pub fn render_table(&self) -> String {
        let width = self.checks().map(|(_, n, _)| n.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (s, cs) in &self.suites {
            let _ = writeln!(out, "[{s}]");
            for (n, c) in cs {
                let observed = compact(&c.observed);
                let line = if c.expected.is_null() {
                    observed
                } else {
                    format!("{observed}  (expected {})", compact(&c.expected))
                };
                let _ = writeln!(out, "  {}  {n:<width$}  {line}", c.status.label());
                for w in &c.witnesses {
                    let _ = writeln!(out, "        witness {}", compact(w));
                }
            }
        }
        let _ = writeln!(out, "{} checks, {} failed", self.checks().count(), self.failures());
        out
    }
}

/// Strings bare, arrays of arrays one row per line, everything else as
/// compact JSON.
fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(rows) if rows.len() > 1 && rows.iter().all(|r| r.is_array() || r.is_object()) => {
            let body: Vec<String> = rows.iter().map(|r| format!("\n        {}", compact(r))).collect();
            body.concat()
        }
        other => other.to_string(),
    }
}
