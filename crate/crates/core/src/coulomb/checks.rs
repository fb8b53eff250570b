//! Empirical checks on the registry: positivity, quasi-commutation versus
//! compatibility, and agreement between the labeled walk and the unlabeled graph.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::CoulombError;
use crate::graph::{explore, variable_inventory};
use crate::qtorus::TorusElement;
use crate::seed::QuantumSeed;

use super::labels::SimpleLabel;
use super::registry::{FitRole, SimpleClassRegistry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub depth: usize,
    pub seeds: usize,
    pub variables: usize,
    /// Variables with a coefficient outside `Z_{>=0}[v^{±1}]`.
    pub violations: Vec<String>,
}

impl PositivityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "seeds": self.seeds,
            "variables": self.variables,
            "violations": self.violations,
        })
    }
}

/// Checks every cluster variable reachable within `depth` mutations.
pub fn positivity(seed: &QuantumSeed, depth: usize) -> Result<PositivityReport, CoulombError> {
    let g = explore(seed, depth)?;
    let inv = variable_inventory(&g);
    Ok(PositivityReport {
        depth,
        seeds: g.node_count(),
        variables: inv.len(),
        violations: inv.iter().filter(|v| !v.is_positive()).map(ToString::to_string).collect(),
    })
}

/// Registry labels that are genuine cluster variables (not auxiliary, frozen or unit).
fn cluster_labels(reg: &SimpleClassRegistry) -> Vec<SimpleLabel> {
    reg.labels()
        .copied()
        .filter(|l| matches!(l, SimpleLabel::P { .. }))
        .filter(|l| reg.normalization(*l).is_none_or(|n| n.role != FitRole::Auxiliary))
        .filter(|l| reg.walk().first_depth.contains_key(l))
        .collect()
}

/// Pairs of registry classes that quasi-commute but never share a cluster of the walk.
pub fn leclerc_shadow(reg: &SimpleClassRegistry) -> Result<Vec<(SimpleLabel, SimpleLabel)>, CoulombError> {
    let labels = cluster_labels(reg);
    let mut bad = Vec::new();
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            let (x, y) = (reg.class(a).expect("listed"), reg.class(b).expect("listed"));
            if x.multiply(&y)?.detect_q_proportional(&y.multiply(&x)?)?.is_some() && !reg.walk().share_cluster(a, b) {
                bad.push((a, b));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InventoryReport {
    pub depth: usize,
    pub seeds: usize,
    /// Label matched by each inventory variable, with `(f, m)`.
    pub matched: BTreeMap<SimpleLabel, (i64, i64)>,
    /// Inventory variables that match no registry label.
    pub unmatched: Vec<String>,
    /// Registry labels first reached within `depth` but absent from the inventory.
    pub missing: Vec<SimpleLabel>,
}

impl InventoryReport {
    pub fn ok(&self) -> bool {
        self.unmatched.is_empty() && self.missing.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "seeds": self.seeds,
            "matched": self.matched.iter().map(|(l, (f, m))| (l.to_string(), json!({"frozen_power": f, "v_power": m}))).collect::<serde_json::Map<_, _>>(),
            "unmatched": self.unmatched,
            "missing": self.missing.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// Compares the unlabeled exchange graph's inventory with the registry labels.
pub fn inventory_against_registry(
    reg: &SimpleClassRegistry,
    seed: &QuantumSeed,
    depth: usize,
) -> Result<InventoryReport, CoulombError> {
    let g = explore(seed, depth)?;
    let labels = cluster_labels(reg);
    let det = reg.frozen_class();
    let mut matched = BTreeMap::new();
    let mut unmatched = Vec::new();
    for v in variable_inventory(&g) {
        if det.as_ref() == Some(&v) {
            continue;
        }
        let mut hit = None;
        for &l in &labels {
            if let Some(fm) = reg.match_class(&v, l)? {
                hit = Some((l, fm));
                break;
            }
        }
        match hit {
            Some((l, fm)) => {
                matched.insert(l, fm);
            }
            None => unmatched.push(v.to_string()),
        }
    }
    let missing = labels
        .iter()
        .copied()
        .filter(|l| reg.walk().first_depth[l] <= depth && !matched.contains_key(l))
        .collect();
    Ok(InventoryReport {
        depth,
        seeds: g.node_count(),
        matched,
        unmatched,
        missing,
    })
}

/// `detect_q_proportional(xy, yx)` for two classes, in units of `v`.
pub fn commutation_exponent(x: &TorusElement, y: &TorusElement) -> Result<Option<i64>, CoulombError> {
    Ok(x.multiply(y)?.detect_q_proportional(&y.multiply(x)?)?)
}
