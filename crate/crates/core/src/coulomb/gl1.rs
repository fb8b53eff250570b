use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::charcalc::{verify_abelian_sequences, Window};
use crate::error::CoulombError;
use crate::qtorus::{SkewForm, TorusElement};
use crate::seed::{ExchangeMatrix, QuantumSeed};

use super::labels::SimpleLabel;
use super::registry::{FitRole, Normalization, SimpleClassRegistry};
use super::suites::{check_instances, InstanceReport, Status, SuiteReport};
use super::relations::{abelian, FAMILY_ABELIAN};

/// Candidate values of the single off-diagonal form entry.
pub const LAMBDA_CANDIDATES: [i64; 4] = [1, -1, 2, -2];

/// Convention fixed for the rank-one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl1Convention {
    pub lambda12: i64,
    /// `[KoszulUnit] = v^c X_2`.
    pub koszul_exponent: i64,
    /// Loop offset `a_2 - a_1` between the two sequences, as a power of `p = q^{-1}`.
    pub loop_offset: i64,
}

impl Gl1Convention {
    /// `v`-power on the Koszul term of the second sequence: `p^a = q^{-a} = v^{-2a}`.
    pub fn koszul_shift(&self) -> i64 {
        -2 * self.loop_offset
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda12": self.lambda12,
            "koszul_exponent": self.koszul_exponent,
            "loop_offset": self.loop_offset,
            "koszul_shift": self.koszul_shift(),
        })
    }
}

fn seed_with(lambda12: i64) -> QuantumSeed {
    let form = SkewForm::new(&[vec![0, lambda12], vec![-lambda12, 0]]).expect("skew");
    let b = ExchangeMatrix::new(&[vec![0], vec![1]]).expect("valid");
    QuantumSeed::initial(
        form,
        b,
        vec![SimpleLabel::p(1, 0).to_string(), SimpleLabel::KoszulUnit.to_string()],
    )
    .expect("consistent shapes")
}

/// Searches the form entry so that both abelian sequences hold, with the
/// second Koszul term shifted by the loop offset read off the characters.
pub fn fit_gl1_convention(loop_offset: i64) -> Result<Gl1Convention, CoulombError> {
    let mut found = Vec::new();
    for &lambda12 in &LAMBDA_CANDIDATES {
        let seed = seed_with(lambda12);
        let y = seed.mutate(0)?.variables()[0].clone();
        let x1 = &seed.variables()[0];
        let x2 = &seed.variables()[1];
        let one = TorusElement::one(seed.form().clone());
        let Some(c) = x1.multiply(&y)?.sub(&one)?.detect_q_proportional(x2)? else {
            continue;
        };
        let conv = Gl1Convention {
            lambda12,
            koszul_exponent: c,
            loop_offset,
        };
        let second = y.multiply(x1)?.sub(&one)?;
        if second == x2.shift_v(c + conv.koszul_shift()) {
            found.push(conv);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one")),
        _ => Err(CoulombError::NoConsistentConvention),
    }
}

/// Loop offset between the two abelian sequences, from the character twists.
pub fn character_loop_offset() -> Result<i64, CoulombError> {
    Ok(verify_abelian_sequences(Window::symmetric(8)?)?.loop_offset())
}

/// The rank-one seed: one mutable vertex, frozen Koszul unit, form fitted.
pub fn initial_seed_gl1() -> Result<QuantumSeed, CoulombError> {
    let conv = fit_gl1_convention(character_loop_offset()?)?;
    Ok(seed_with(conv.lambda12))
}

/// Registry `P_{1,0} = X_1`, `P_{-1,0} = mu_1(X_1)`, `KoszulUnit = v^c X_2`.
pub fn gl1_registry(conv: &Gl1Convention) -> Result<SimpleClassRegistry, CoulombError> {
    let seed = seed_with(conv.lambda12);
    let y = seed.mutate(0)?.variables()[0].clone();
    let classes = BTreeMap::from([
        (SimpleLabel::p(1, 0), seed.variables()[0].clone()),
        (SimpleLabel::p(-1, 0), y),
        (SimpleLabel::KoszulUnit, seed.variables()[1].shift_v(conv.koszul_exponent)),
    ]);
    let norms = BTreeMap::from([(
        SimpleLabel::KoszulUnit,
        Normalization {
            template: abelian(conv.koszul_shift())[0].id(),
            frozen_power: 0,
            v_power: conv.koszul_exponent,
            role: FitRole::Main,
        },
    )]);
    Ok(SimpleClassRegistry::from_classes(seed.form().clone(), 0, classes, norms).with_koszul_shift(conv.koszul_shift()))
}

/// Both abelian sequences, plus agreement of their classical shadows.
pub fn verify_gl1(conv: &Gl1Convention) -> Result<SuiteReport, CoulombError> {
    let reg = gl1_registry(conv)?;
    let instances = abelian(conv.koszul_shift());
    let mut report = check_instances(&reg, "abelian", &instances)?;
    let mut shadows = Vec::new();
    for r in &instances {
        let (lhs, rhs) = reg.evaluate(r)?.expect("all classes present");
        shadows.push((lhs.specialize_classical(), rhs.specialize_classical()));
    }
    let same = shadows.iter().all(|(l, r)| l == r) && shadows[0].1 == shadows[1].1;
    report.instances.push(InstanceReport {
        name: "ab-classical".into(),
        family: FAMILY_ABELIAN.into(),
        params: BTreeMap::new(),
        relation: "both sequences agree at v = 1".into(),
        lhs: Some(json!(shadows[0].1.to_string())),
        rhs: Some(json!(shadows[1].1.to_string())),
        status: if same { Status::Pass } else { Status::Fail },
        normalization_used: Vec::new(),
        designated: false,
        note: None,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convention_is_unique() {
        let conv = fit_gl1_convention(-1).unwrap();
        assert_eq!(conv.lambda12, -1);
        assert_eq!(conv.koszul_exponent, -1);
        assert_eq!(initial_seed_gl1().unwrap().check_compatibility().d, Some(1));
    }

    #[test]
    fn exchange_binomial() {
        let s = initial_seed_gl1().unwrap();
        let y = s.mutate(0).unwrap().variables()[0].clone();
        let f = s.form().clone();
        let want = TorusElement::monomial(f.clone(), vec![-1, 1])
            .unwrap()
            .add(&TorusElement::monomial(f, vec![-1, 0]).unwrap())
            .unwrap();
        assert_eq!(y, want);
    }
}
