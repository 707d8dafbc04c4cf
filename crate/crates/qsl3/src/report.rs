use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
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

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }

    /// Fail dominates, then inconclusive.
    pub fn combine<I: IntoIterator<Item = Status>>(it: I) -> Status {
        it.into_iter().fold(Status::Pass, |acc, s| match (acc, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        })
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status, detail: detail.into() }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check::new(name, Status::from_bool(ok), detail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub family: Option<String>,
    pub t: String,
    pub field: String,
    pub elapsed_ms: String,
    pub checks: Vec<Check>,
    pub data: Value,
    /// Extra human-readable lines for text output.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl SuiteReport {
    pub fn status(&self) -> Status {
        Status::combine(self.checks.iter().map(|c| c.status))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub config: Value,
    pub suites: Vec<SuiteReport>,
    pub verdict: Status,
}

impl RunReport {
    pub fn new(command: String, config: Value, suites: Vec<SuiteReport>) -> Self {
        let verdict = Status::combine(suites.iter().map(SuiteReport::status));
        RunReport { schema: SCHEMA, command, config, suites, verdict }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let fam = s.family.as_deref().map(|f| format!(" family={}", f)).unwrap_or_default();
            let _ = writeln!(out, "== {}{} t={} field={} ({} ms): {}", s.suite, fam, s.t, s.field, s.elapsed_ms, s.status().label());
            for c in &s.checks {
                let _ = writeln!(out, "  {:<13} {} {}", c.status.label(), c.name, c.detail);
            }
            for line in &s.text {
                let _ = writeln!(out, "  {}", line);
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.label());
        out
    }

    pub fn find(&self, suite: &str, family: Option<&str>) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite && (family.is_none() || s.family.as_deref() == family))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        use Status::*;
        assert_eq!(Status::combine([Pass, Pass]), Pass);
        assert_eq!(Status::combine([Pass, Inconclusive]), Inconclusive);
        assert_eq!(Status::combine([Inconclusive, Fail, Pass]), Fail);
        assert_eq!(Status::combine([]), Pass);
        assert_eq!(Fail.exit_code(), 1);
        assert_eq!(Inconclusive.exit_code(), 3);
    }
}
