use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CoulombError;

use super::labels::SimpleLabel;
use super::registry::SimpleClassRegistry;
use super::relations::{abelian, suite_instances, RelationInstance, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Skip => "skip",
        }
    }
}

/// Outcome of one relation instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceReport {
    pub name: String,
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub relation: String,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    pub status: Status,
    /// Normalizations `(label, frozen power, v power)` of the classes involved.
    pub normalization_used: Vec<(String, i64, i64)>,
    /// The instance fixed one of those normalizations, so passing is automatic.
    pub designated: bool,
    pub note: Option<String>,
}

impl InstanceReport {
    pub fn to_json(&self) -> Value {
        let norms: Vec<Value> = self
            .normalization_used
            .iter()
            .map(|(l, f, m)| json!({"label": l, "frozen_power": f, "v_power": m}))
            .collect();
        let mut v = json!({
            "name": self.name,
            "family": self.family,
            "params": self.params,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status.as_str(),
            "normalization_used": norms,
            "designated": self.designated,
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: Vec<InstanceReport>,
    /// False for suites with no reference data to compare against.
    pub validated: bool,
}

impl SuiteReport {
    pub fn count(&self, s: Status) -> usize {
        self.instances.iter().filter(|i| i.status == s).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    /// Passing instances that were not used for fitting.
    pub fn independent_passes(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| i.status == Status::Pass && !i.designated)
            .count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "validated": self.validated,
            "instances": self.instances.iter().map(InstanceReport::to_json).collect::<Vec<_>>(),
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "skip": self.count(Status::Skip),
            },
        })
    }
}

/// Evaluates one instance against the registry. Missing in-scope labels are
/// returned in `Err` so the caller can report coverage.
pub fn check_instance(reg: &SimpleClassRegistry, r: &RelationInstance) -> Result<InstanceReport, CoulombError> {
    let labels = r.labels();
    let mut report = InstanceReport {
        name: r.name.clone(),
        family: r.family.to_string(),
        params: r.params.clone(),
        relation: r.to_string(),
        lhs: None,
        rhs: None,
        status: Status::Skip,
        normalization_used: Vec::new(),
        designated: false,
        note: None,
    };
    if let Some(out) = labels.iter().find(|l| !reg.in_scope(**l)) {
        report.note = Some(format!("{out} outside the registry window"));
        return Ok(report);
    }
    let missing: Vec<String> = labels
        .iter()
        .filter(|l| reg.class(**l).is_none())
        .map(ToString::to_string)
        .collect();
    if !missing.is_empty() {
        return Err(CoulombError::Coverage(missing));
    }
    let mut seen: Vec<SimpleLabel> = labels.clone();
    seen.sort();
    seen.dedup();
    for l in seen {
        if let Some(n) = reg.normalization(l) {
            report.normalization_used.push((l.to_string(), n.frozen_power, n.v_power));
            if n.template == r.id() {
                report.designated = true;
            }
        }
    }
    let (lhs, rhs) = reg.evaluate(r)?.expect("all classes present");
    report.status = if lhs == rhs { Status::Pass } else { Status::Fail };
    report.lhs = Some(lhs.to_json());
    report.rhs = Some(rhs.to_json());
    Ok(report)
}

/// Checks a list of instances, in parallel, preserving order.
pub fn check_instances(
    reg: &SimpleClassRegistry,
    suite: &str,
    instances: &[RelationInstance],
) -> Result<SuiteReport, CoulombError> {
    let results: Vec<Result<InstanceReport, CoulombError>> =
        instances.par_iter().map(|r| check_instance(reg, r)).collect();
    let mut missing = Vec::new();
    let mut out = Vec::new();
    for r in results {
        match r {
            Ok(x) => out.push(x),
            Err(CoulombError::Coverage(m)) => missing.extend(m),
            Err(e) => return Err(e),
        }
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        return Err(CoulombError::Coverage(missing));
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        instances: out,
        validated: true,
    })
}

/// Runs a rank-two suite over `l` in `[-ell_window, ell_window]`.
pub fn verify_relations(reg: &SimpleClassRegistry, suite: Suite, ell_window: i64) -> Result<SuiteReport, CoulombError> {
    let instances = match suite {
        Suite::Abelian => {
            let shift = reg
                .koszul_shift()
                .ok_or_else(|| CoulombError::Coverage(vec![SimpleLabel::KoszulUnit.to_string()]))?;
            abelian(shift)
        }
        _ => suite_instances(suite, ell_window),
    };
    check_instances(reg, suite.name(), &instances)
}
