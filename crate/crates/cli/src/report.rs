use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// None when the computation itself failed; see `error`.
    pub measured: Option<f64>,
    pub relation: Relation,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub sections: Vec<Section>,
    /// Library operations exercised while producing the report.
    pub operations: Vec<String>,
    pub status: Status,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for section in &self.sections {
            let _ = writeln!(out, "[{}] {}", section.name, section.status.as_str());
            for c in &section.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let rel = match c.relation {
                    Relation::AtMost => "<=",
                    Relation::AtLeast => ">=",
                };
                match (&c.measured, &c.error) {
                    (_, Some(e)) => {
                        let _ = writeln!(out, "  {mark} {}: error: {e}", c.name);
                    }
                    (Some(m), None) => {
                        let _ = writeln!(out, "  {mark} {}: {m:.6e} {rel} {:.1e}", c.name, c.tolerance);
                    }
                    (None, None) => {
                        let _ = writeln!(out, "  {mark} {}", c.name);
                    }
                }
            }
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        out
    }
}

#[derive(Debug, Default)]
pub struct SectionBuilder {
    name: String,
    checks: Vec<Check>,
    operations: BTreeSet<&'static str>,
}

impl SectionBuilder {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn uses(&mut self, ops: &[&'static str]) {
        self.operations.extend(ops.iter().copied());
    }

    pub fn at_most(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) {
        self.push(name.into(), measured, Relation::AtMost, tolerance);
    }

    pub fn at_least(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) {
        self.push(name.into(), measured, Relation::AtLeast, tolerance);
    }

    /// Records `measured <= tolerance`, or a failed check carrying the error.
    pub fn at_most_or<E: std::fmt::Display>(
        &mut self,
        name: impl Into<String>,
        measured: Result<f64, E>,
        tolerance: f64,
    ) {
        match measured {
            Ok(v) => self.at_most(name, v, tolerance),
            Err(e) => self.error(name, Relation::AtMost, tolerance, e),
        }
    }

    pub fn error(&mut self, name: impl Into<String>, relation: Relation, tolerance: f64, e: impl std::fmt::Display) {
        self.checks.push(Check {
            name: name.into(),
            measured: None,
            relation,
            tolerance,
            passed: false,
            error: Some(e.to_string()),
        });
    }

    fn push(&mut self, name: String, measured: f64, relation: Relation, tolerance: f64) {
        let passed = measured.is_finite()
            && match relation {
                Relation::AtMost => measured <= tolerance,
                Relation::AtLeast => measured >= tolerance,
            };
        self.checks.push(Check {
            name,
            measured: measured.is_finite().then_some(measured),
            relation,
            tolerance,
            passed,
            error: None,
        });
    }

    pub fn finish(self) -> (Section, BTreeSet<&'static str>) {
        let status = Status::of(!self.checks.is_empty() && self.checks.iter().all(|c| c.passed));
        (
            Section {
                name: self.name,
                checks: self.checks,
                status,
            },
            self.operations,
        )
    }
}

pub fn assemble(command: String, parameters: BTreeMap<String, String>, built: Vec<SectionBuilder>) -> RunReport {
    let mut sections = Vec::new();
    let mut ops = BTreeSet::new();
    for b in built {
        let (section, used) = b.finish();
        sections.push(section);
        ops.extend(used);
    }
    let status = Status::of(sections.iter().all(|s| s.status == Status::Pass));
    RunReport {
        command,
        parameters,
        sections,
        operations: ops.into_iter().map(str::to_string).collect(),
        status,
    }
}
