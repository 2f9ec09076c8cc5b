//! Deterministic experiment reports.
//!
//! A report is a header (tool version, generation time) plus a body. The
//! body depends only on the configuration, so comparison mode serializes the
//! body alone.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::ExperimentConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "==")]
    Equal,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One observed value compared against a bound from a named result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    /// Tag of the statement the bound comes from (`e0a`, `l1`, `i3`, ...).
    pub source: String,
    pub quantity: String,
    pub observed: i64,
    pub relation: Relation,
    pub bound: i64,
    pub holds: bool,
}

impl BoundRow {
    pub fn new(source: &str, quantity: &str, observed: i64, relation: Relation, bound: i64) -> Self {
        let holds = match relation {
            Relation::AtMost => observed <= bound,
            Relation::Equal => observed == bound,
            Relation::AtLeast => observed >= bound,
        };
        Self { source: source.into(), quantity: quantity.into(), observed, relation, bound, holds }
    }
}

/// An exact value together with the kind of evidence backing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub quantity: String,
    pub value: Value,
    /// `apolar`, `decomposition`, `pencil`, `oracle`, `probe`, `formula`, ...
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub claims: Vec<Claim>,
    pub bounds: Vec<BoundRow>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub error: Option<String>,
}

/// A named yes/no verification inside a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

impl CaseRecord {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            inputs: Map::new(),
            outputs: Map::new(),
            claims: Vec::new(),
            bounds: Vec::new(),
            checks: Vec::new(),
            passed: true,
            error: None,
        }
    }

    pub fn failed(id: impl Into<String>, error: String) -> Self {
        let mut r = Self::new(id);
        r.passed = false;
        r.error = Some(error);
        r
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(v));
        self
    }

    pub fn output(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.outputs.insert(key.into(), to_value(v));
        self
    }

    pub fn claim(&mut self, quantity: &str, v: impl Serialize, certificate: &str) -> &mut Self {
        self.claims.push(Claim { quantity: quantity.into(), value: to_value(v), certificate: certificate.into() });
        self
    }

    pub fn bound(&mut self, row: BoundRow) -> &mut Self {
        self.passed &= row.holds;
        self.bounds.push(row);
        self
    }

    pub fn check(&mut self, name: &str, ok: bool) -> &mut Self {
        self.passed &= ok;
        self.checks.push(Check { name: name.into(), ok });
        self
    }

    /// Names of the failed checks and bound rows.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().filter(|c| !c.ok).map(|c| c.name.clone()).collect();
        out.extend(
            self.bounds
                .iter()
                .filter(|b| !b.holds)
                .map(|b| format!("{}: {} {:?} {}", b.source, b.observed, b.relation, b.bound)),
        );
        if let Some(e) = &self.error {
            out.push(e.clone());
        }
        out
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Header {
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportBody {
    pub config: ExperimentConfig,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub header: Header,
    pub body: ReportBody,
}

impl Report {
    /// Sorts the cases by id and fills in the summary.
    pub fn new(config: ExperimentConfig, mut cases: Vec<CaseRecord>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().filter(|c| c.passed).count();
        let summary = Summary { total: cases.len(), passed, failed: cases.len() - passed };
        let generated_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self {
            header: Header { tool_version: env!("CARGO_PKG_VERSION").into(), generated_at },
            body: ReportBody { config, cases, summary },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.body.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The body alone: identical configurations give identical bytes.
    pub fn comparison_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report serializes")
    }

    /// One row per case: id, pass flag, number of bound rows, failures.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,passed,bounds,failures\n");
        for c in &self.body.cases {
            let failures = c.failures().join("; ").replace('"', "'");
            out.push_str(&format!("{},{},{},\"{}\"\n", c.id, c.passed, c.bounds.len(), failures));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_rows_and_sorting() {
        let cfg = ExperimentConfig::new("sylvester", 1);
        let mut a = CaseRecord::new("b");
        a.bound(BoundRow::new("e0b", "rank", 5, Relation::AtMost, 4));
        let mut b = CaseRecord::new("a");
        b.check("fine", true);
        let r = Report::new(cfg, vec![a, b]);
        assert_eq!(r.body.cases[0].id, "a");
        assert_eq!(r.body.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert!(!r.all_passed());
        assert!(!r.comparison_json().contains("generated_at"));
        assert!(r.to_json().contains("generated_at"));
        assert!(r.to_csv().contains("e0b: 5 AtMost 4"));
    }
}
