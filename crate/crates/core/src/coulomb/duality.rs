use serde_json::{json, Value};

use crate::error::CoulombError;
use crate::graph::{is_acyclic, twist};
use crate::seed::QuantumSeed;

use super::labels::SimpleLabel;
use super::registry::SimpleClassRegistry;

/// Rank-two left dual on strip labels: `P_{1,l} -> P_{-1,2-l}`, `P_{-1,l} -> P_{1,-l-1}`.
pub fn dual_label(label: SimpleLabel) -> Option<SimpleLabel> {
    match label {
        SimpleLabel::P { k: 1, l } => Some(SimpleLabel::p(-1, 2 - l)),
        SimpleLabel::P { k: -1, l } => Some(SimpleLabel::p(1, -l - 1)),
        _ => None,
    }
}

/// Image of one vertex under a twist, compared with the expected class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistImage {
    pub source: SimpleLabel,
    pub target: SimpleLabel,
    /// `(f, m)` with image `= v^m Pdet^f class(target)`.
    pub normalization: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCheck {
    pub start: Vec<SimpleLabel>,
    pub sequence: Vec<usize>,
    pub images: Vec<TwistImage>,
}

impl TwistCheck {
    pub fn ok(&self) -> bool {
        self.images.iter().all(|i| i.normalization.is_some())
    }

    pub fn targets(&self) -> Vec<SimpleLabel> {
        self.images.iter().map(|i| i.target).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "start": self.start.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "sequence": self.sequence.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "images": self.images.iter().map(|i| json!({
                "source": i.source.to_string(),
                "target": i.target.to_string(),
                "normalization": i.normalization.map(|(f, m)| json!({"frozen_power": f, "v_power": m})),
            })).collect::<Vec<_>>(),
            "ok": self.ok(),
        })
    }
}

fn twist_and_match(
    reg: &SimpleClassRegistry,
    seed: &QuantumSeed,
    labels: &[SimpleLabel],
) -> Result<(TwistCheck, QuantumSeed, Vec<SimpleLabel>), CoulombError> {
    let (out, sequence) = twist(seed)?;
    let mut images = Vec::new();
    for (i, &src) in labels.iter().enumerate() {
        let target = dual_label(src).ok_or_else(|| CoulombError::Registry {
            label: src.to_string(),
            reason: "no dual on this label".into(),
        })?;
        let normalization = reg.match_class(&out.variables()[i], target)?;
        images.push(TwistImage {
            source: src,
            target,
            normalization,
        });
    }
    let check = TwistCheck {
        start: labels.to_vec(),
        sequence,
        images,
    };
    let targets = check.targets();
    Ok((check, out, targets))
}

/// Dual pattern at one label, checked through some acyclic strip cluster containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub label: SimpleLabel,
    pub dual: SimpleLabel,
    pub cluster: Vec<SimpleLabel>,
    pub normalization: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub example: TwistCheck,
    pub double: TwistCheck,
    pub pattern: Vec<DualCheck>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.example.ok() && self.double.ok() && self.pattern.iter().all(|d| d.normalization.is_some())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "example": self.example.to_json(),
            "double": self.double.to_json(),
            "pattern": self.pattern.iter().map(|d| json!({
                "label": d.label.to_string(),
                "dual": d.dual.to_string(),
                "cluster": d.cluster.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "normalization": d.normalization.map(|(f, m)| json!({"frozen_power": f, "v_power": m})),
            })).collect::<Vec<_>>(),
            "ok": self.ok(),
        })
    }
}

/// Starting cluster of the twist example.
pub fn twist_example_labels() -> [SimpleLabel; 3] {
    [SimpleLabel::p(-1, -1), SimpleLabel::p(1, 1), SimpleLabel::p(-1, 0)]
}

/// Twists the example cluster once and twice, and checks the dual pattern on
/// every strip label with `|l| <= pattern_window`.
pub fn verify_twist_duality(reg: &SimpleClassRegistry, pattern_window: i64) -> Result<DualityReport, CoulombError> {
    let start = reg
        .walk()
        .find(&twist_example_labels())
        .ok_or_else(|| CoulombError::Depth("{P_{-1,-1}, P_{1,1}, P_{-1,0}}".into()))?;
    let (example, once, targets) = twist_and_match(reg, &start.seed, &start.labels)?;
    let (double, _, _) = twist_and_match(reg, &once, &targets)?;
    let mut pattern = Vec::new();
    for k in [1, -1] {
        for l in -pattern_window..=pattern_window {
            let label = SimpleLabel::p(k, l);
            let dual = dual_label(label).expect("strip label");
            if reg.class(dual).is_none() {
                return Err(CoulombError::Coverage(vec![dual.to_string()]));
            }
            let cluster = reg.walk().clusters.values().find(|c| {
                c.labels.contains(&label) && c.labels.iter().all(SimpleLabel::is_strip) && is_acyclic(&c.seed).is_some()
            });
            let Some(c) = cluster else {
                return Err(CoulombError::Depth(format!("acyclic strip cluster containing {label}")));
            };
            let (out, _) = twist(&c.seed)?;
            let i = c.labels.iter().position(|x| *x == label).expect("contains label");
            pattern.push(DualCheck {
                label,
                dual,
                cluster: c.labels.clone(),
                normalization: reg.match_class(&out.variables()[i], dual)?,
            });
        }
    }
    Ok(DualityReport {
        example,
        double,
        pattern,
    })
}
