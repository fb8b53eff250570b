use std::collections::BTreeMap;

use crate::error::{CoulombError, SeedError};
use crate::seed::{build_quiver_gln, complete_lambda, quiver_gln_labels, QuantumSeed};

use super::labels::SimpleLabel;
use super::registry::SimpleClassRegistry;
use super::relations::{mut1, mut2, old1, old2, RelationInstance};
use super::suites::{check_instances, SuiteReport};

/// The `GL_n` seed with the integral form completing the quiver at `d = -2`.
pub fn initial_seed_gln(n: usize) -> Result<QuantumSeed, CoulombError> {
    let b = build_quiver_gln(n)?;
    let form = complete_lambda(&b, -2)?.ok_or(SeedError::Incompatible)?;
    Ok(QuantumSeed::initial(form, b, quiver_gln_labels(n))?)
}

/// One mutation at every vertex of the `GL_n` seed. Each new variable is named
/// by the label the general exchange relations predict and normalized by one
/// of them; every other instance with known labels is then checked. There is
/// no reference data for `n > 2`, so the report is marked unvalidated.
pub fn gln_neighbourhood_suite(n: usize, sigma: i64) -> Result<SuiteReport, CoulombError> {
    let seed = initial_seed_gln(n)?;
    let ni = n as i64;
    let mut classes = BTreeMap::new();
    for (name, v) in seed.labels().iter().zip(seed.variables()) {
        classes.insert(name.parse::<SimpleLabel>()?, v.clone());
    }
    let mut reg = SimpleClassRegistry::from_classes(seed.form().clone(), sigma, classes, BTreeMap::new());
    for k in 0..seed.mutable_count() {
        let label: SimpleLabel = seed.labels()[k].parse()?;
        let (SimpleLabel::P { k: kk, l }, Some(z)) = (label, seed.mutate(k)?.variables().get(k).cloned()) else {
            continue;
        };
        let (new, template) = match l {
            1 => (SimpleLabel::p(kk, -1), old1(kk, 0)),
            0 if kk == ni => (SimpleLabel::p(-1, 0), mut1(ni, 0)),
            // needs P_{n,1}, which no single mutation produces
            0 if kk == ni - 1 => continue,
            _ => (SimpleLabel::p(kk, 2), old1(kk, 1)),
        };
        if let Some((class, norm)) = reg.fit_one(new, &z, &template)? {
            reg = reg.with_class(new, class, norm);
        }
    }
    let mut instances: Vec<RelationInstance> = Vec::new();
    for k in 1..ni {
        for l in 0..=1 {
            instances.push(old1(k, l));
            instances.push(old2(k, l));
        }
    }
    instances.push(mut1(ni, 0));
    instances.push(mut2(ni, 0));
    let mut report = check_instances(&reg, &format!("gl{n}-neighbourhood"), &instances)?;
    report.validated = false;
    Ok(report)
}
