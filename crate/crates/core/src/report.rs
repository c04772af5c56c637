//! Pass/fail reports with the first failing witnesses.

use serde::{Deserialize, Serialize};

/// Number of failures kept verbatim; the count of all failures is kept separately.
pub const WITNESS_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(rename = "where")]
    pub location: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<String>,
    pub genus: u32,
    pub d: u32,
    pub pass: bool,
    pub cases: u64,
    #[serde(rename = "failureCount")]
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn check(name: &str, genus: u32, d: u32) -> Self {
        Report {
            suite: None,
            check: Some(name.to_string()),
            genus,
            d,
            pass: true,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn suite(name: &str, genus: u32, d: u32) -> Self {
        Report {
            suite: Some(name.to_string()),
            check: None,
            ..Report::check(name, genus, d)
        }
    }

    pub fn name(&self) -> &str {
        self.suite
            .as_deref()
            .or(self.check.as_deref())
            .unwrap_or("")
    }

    /// Records one case; a failure keeps its witness if there is room.
    pub fn record(
        &mut self,
        ok: bool,
        location: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        got: impl FnOnce() -> String,
    ) {
        self.cases += 1;
        if ok {
            return;
        }
        self.pass = false;
        self.failure_count += 1;
        if self.failures.len() < WITNESS_LIMIT {
            self.failures.push(Failure {
                location: location(),
                expected: expected(),
                got: got(),
            });
        }
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        location: impl FnOnce() -> String,
        expected: &T,
        got: &T,
    ) {
        self.record(
            expected == got,
            location,
            || expected.to_string(),
            || got.to_string(),
        );
    }

    /// Folds another report's cases and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        if !other.pass {
            self.pass = false;
        }
        let prefix = other.name().to_string();
        for f in other.failures {
            if self.failures.len() >= WITNESS_LIMIT {
                break;
            }
            self.failures.push(Failure {
                location: if prefix.is_empty() {
                    f.location
                } else {
                    format!("{prefix}: {}", f.location)
                },
                ..f
            });
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
