use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
}

/// One verified inequality. `margin` is positive exactly when the check
/// passes: `bound - observed` for upper bounds, `observed - bound` for the
/// lower bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub paper_ref: &'static str,
    pub relation: Relation,
    pub bound: f64,
    pub observed: f64,
    pub margin: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        paper_ref: &'static str,
        relation: Relation,
        bound: f64,
        observed: f64,
    ) -> Self {
        let passed = match relation {
            Relation::Below => observed < bound,
            Relation::AtMost => observed <= bound,
            Relation::Above => observed > bound,
        };
        let margin = match relation {
            Relation::Above => observed - bound,
            _ => bound - observed,
        };
        Check {
            name: name.into(),
            paper_ref,
            relation,
            bound,
            observed,
            margin,
            passed,
        }
    }

    pub fn below(name: impl Into<String>, paper_ref: &'static str, bound: f64, observed: f64) -> Self {
        Self::new(name, paper_ref, Relation::Below, bound, observed)
    }

    pub fn at_most(name: impl Into<String>, paper_ref: &'static str, bound: f64, observed: f64) -> Self {
        Self::new(name, paper_ref, Relation::AtMost, bound, observed)
    }

    pub fn above(name: impl Into<String>, paper_ref: &'static str, bound: f64, observed: f64) -> Self {
        Self::new(name, paper_ref, Relation::Above, bound, observed)
    }

    /// A count of violations that must be zero.
    pub fn none_of(name: impl Into<String>, paper_ref: &'static str, violations: usize) -> Self {
        Self::at_most(name, paper_ref, 0.0, violations as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonReport {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub notes: Vec<String>,
    pub data: Map<String, Value>,
}

/// What a suite produces before it is wrapped into a report.
#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub data: Map<String, Value>,
}

impl SuiteOutput {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn record(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.data.insert(key.to_string(), v);
    }

    pub fn extend(&mut self, other: SuiteOutput) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
        self.data.extend(other.data);
    }
}

impl JsonReport {
    pub fn new(config: &RunConfig, out: SuiteOutput) -> Self {
        let passed = out.checks.iter().filter(|c| c.passed).count();
        JsonReport {
            schema_version: SCHEMA_VERSION,
            command: config.command.name().to_string(),
            config: config.clone(),
            summary: Summary {
                total: out.checks.len(),
                passed,
                failed: out.checks.len() - passed,
            },
            checks: out.checks,
            notes: out.notes,
            data: out.data,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
