use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{CoulombError, TorusError};
use crate::qtorus::{SkewForm, TorusElement};
use crate::seed::{ExchangeMatrix, QuantumSeed};

use super::labels::{exchange_partner, SimpleLabel};
use super::relations::{bottom_convention, commute, sequence_templates, RelationInstance, RelationKind, Term};

/// Candidate loop-shift exponents (in powers of `v` per unit of `{m}`).
pub const SHIFT_CANDIDATES: [i64; 6] = [-4, -2, -1, 1, 2, 4];

/// Range searched for the determinant power of a normalization.
pub const FROZEN_RANGE: i64 = 16;

/// The rank-two seed: three mutable vertices and the frozen determinant.
pub fn initial_seed_gl2() -> QuantumSeed {
    let l = SkewForm::new(&[
        vec![0, -2, -2, 2],
        vec![2, 0, 0, 2],
        vec![2, 0, 0, 4],
        vec![-2, -2, -4, 0],
    ])
    .expect("skew-symmetric");
    let b = ExchangeMatrix::new(&[vec![0, 2, -1], vec![-2, 0, 1], vec![1, -1, 0], vec![0, -1, 1]]).expect("valid");
    let labels = [SimpleLabel::p(1, 1), SimpleLabel::p(1, 0), SimpleLabel::p(2, 0), SimpleLabel::Pdet];
    QuantumSeed::initial(l, b, labels.iter().map(ToString::to_string).collect()).expect("consistent shapes")
}

/// Commutation relations among the initial classes `P_{1,1}, P_{1,0}, P_{2,0}`.
pub fn initial_commutations() -> Vec<RelationInstance> {
    vec![commute(1, 0), commute(1, 1), commute(3, 0)]
}

fn seed_classes(seed: &QuantumSeed) -> BTreeMap<SimpleLabel, TorusElement> {
    seed.labels()
        .iter()
        .zip(seed.variables())
        .filter_map(|(l, v)| l.parse::<SimpleLabel>().ok().map(|l| (l, v.clone())))
        .collect()
}

fn holds<F>(r: &RelationInstance, sigma: i64, unit: &TorusElement, class: &F) -> Result<Option<bool>, TorusError>
where
    F: Fn(SimpleLabel) -> Option<TorusElement>,
{
    let Some(lhs) = r.lhs.evaluate(sigma, unit, class)? else {
        return Ok(None);
    };
    let mut rhs = TorusElement::zero(unit.form().clone());
    for t in &r.rhs {
        let Some(x) = t.evaluate(sigma, unit, class)? else {
            return Ok(None);
        };
        rhs = rhs.add(&x)?;
    }
    Ok(Some(lhs == rhs))
}

/// Finds the unique `sigma` (the `v`-exponent of one unit of loop shift) for
/// which every relation whose labels are all seed variables holds.
pub fn fit_loop_shift(seed: &QuantumSeed, relations: &[RelationInstance]) -> Result<i64, CoulombError> {
    let classes = seed_classes(seed);
    let unit = TorusElement::one(seed.ambient_form().clone());
    let lookup = |l: SimpleLabel| match l {
        SimpleLabel::Unit => Some(unit.clone()),
        _ => classes.get(&l).cloned(),
    };
    let mut survivors = Vec::new();
    'cand: for &sigma in &SHIFT_CANDIDATES {
        for r in relations {
            if holds(r, sigma, &unit, &lookup)? == Some(false) {
                continue 'cand;
            }
        }
        survivors.push(sigma);
    }
    match survivors.as_slice() {
        [] => Err(CoulombError::NoConsistentShift),
        [one] => Ok(*one),
        _ => Err(CoulombError::AmbiguousShift(survivors)),
    }
}

/// Which kind of fit produced a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitRole {
    /// A cluster variable fitted by one sequence; all other relations are checks.
    Main,
    /// `P_{2,l}` for `l != 0`, fitted so that the top exchange can be instantiated.
    Auxiliary,
    /// Fixed by a convention relation, not by a relation of the theory.
    Convention,
}

impl FitRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Main => "main",
            Self::Auxiliary => "auxiliary",
            Self::Convention => "convention",
        }
    }
}

/// `class = v^v_power * Pdet^frozen_power * (engine variable)`, fixed by `template`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub template: String,
    pub frozen_power: i64,
    pub v_power: i64,
    pub role: FitRole,
}

impl Normalization {
    pub fn to_json(&self) -> Value {
        json!({
            "template": self.template,
            "frozen_power": self.frozen_power,
            "v_power": self.v_power,
            "role": self.role.as_str(),
        })
    }
}

/// A cluster reached by the labeled walk.
#[derive(Clone, Debug)]
pub struct LabeledCluster {
    /// Labels of the mutable vertices in vertex order.
    pub labels: Vec<SimpleLabel>,
    pub seed: QuantumSeed,
    pub depth: usize,
}

impl LabeledCluster {
    pub fn label_set(&self) -> BTreeSet<SimpleLabel> {
        self.labels.iter().copied().collect()
    }
}

/// Breadth-first walk that tracks the `P_{k,l}` labels along mutations.
#[derive(Clone, Debug, Default)]
pub struct LabeledWalk {
    pub clusters: BTreeMap<BTreeSet<SimpleLabel>, LabeledCluster>,
    /// Engine variable carried by each label (identical at every occurrence).
    pub variables: BTreeMap<SimpleLabel, TorusElement>,
    pub first_depth: BTreeMap<SimpleLabel, usize>,
}

fn labeled_seed(seed: QuantumSeed, labels: &[SimpleLabel]) -> Result<QuantumSeed, CoulombError> {
    let mut names: Vec<String> = labels.iter().map(ToString::to_string).collect();
    names.extend(seed.labels()[labels.len()..].iter().cloned());
    Ok(seed.with_labels(names)?)
}

impl LabeledWalk {
    pub fn run(root: &QuantumSeed, depth: usize) -> Result<Self, CoulombError> {
        let m = root.mutable_count();
        let labels: Vec<SimpleLabel> = root.labels()[..m]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?;
        let mut walk = Self::default();
        for (l, v) in labels.iter().zip(root.variables()) {
            walk.variables.insert(*l, v.clone());
            walk.first_depth.insert(*l, 0);
        }
        let start = LabeledCluster {
            labels: labels.clone(),
            seed: root.clone(),
            depth: 0,
        };
        walk.clusters.insert(start.label_set(), start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            if c.depth >= depth {
                continue;
            }
            for k in 0..m {
                let kept: Vec<SimpleLabel> = (0..m).filter(|&i| i != k).map(|i| c.labels[i]).collect();
                let [a, b] = kept[..] else {
                    return Err(CoulombError::Registry {
                        label: c.labels[k].to_string(),
                        reason: "the labeled walk needs exactly three mutable vertices".into(),
                    });
                };
                let Some(new) = exchange_partner([a, b], c.labels[k]) else {
                    continue;
                };
                let mut labels = c.labels.clone();
                labels[k] = new;
                let seed = labeled_seed(c.seed.mutate(k)?, &labels)?;
                let var = &seed.variables()[k];
                match walk.variables.get(&new) {
                    Some(prev) if prev != var => {
                        return Err(CoulombError::Registry {
                            label: new.to_string(),
                            reason: "label reached with two different cluster variables".into(),
                        })
                    }
                    Some(_) => {}
                    None => {
                        walk.variables.insert(new, var.clone());
                        walk.first_depth.insert(new, c.depth + 1);
                    }
                }
                let next = LabeledCluster {
                    labels,
                    seed,
                    depth: c.depth + 1,
                };
                if let std::collections::btree_map::Entry::Vacant(e) = walk.clusters.entry(next.label_set()) {
                    e.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(walk)
    }

    pub fn find(&self, labels: &[SimpleLabel]) -> Option<&LabeledCluster> {
        self.clusters.get(&labels.iter().copied().collect::<BTreeSet<_>>())
    }

    /// Whether some cluster contains both labels.
    pub fn share_cluster(&self, a: SimpleLabel, b: SimpleLabel) -> bool {
        self.clusters.keys().any(|k| k.contains(&a) && k.contains(&b))
    }
}

/// Classes of simple objects as elements of the ambient rank-two torus.
#[derive(Clone, Debug)]
pub struct SimpleClassRegistry {
    form: Arc<SkewForm>,
    sigma: i64,
    /// `None` for registries without an `l`-window (rank one).
    window: Option<i64>,
    classes: BTreeMap<SimpleLabel, TorusElement>,
    normalizations: BTreeMap<SimpleLabel, Normalization>,
    walk: LabeledWalk,
    koszul_shift: Option<i64>,
}

impl SimpleClassRegistry {
    /// A registry with explicitly given classes and no walk.
    pub fn from_classes(
        form: Arc<SkewForm>,
        sigma: i64,
        classes: BTreeMap<SimpleLabel, TorusElement>,
        normalizations: BTreeMap<SimpleLabel, Normalization>,
    ) -> Self {
        Self {
            form,
            sigma,
            window: None,
            classes,
            normalizations,
            walk: LabeledWalk::default(),
            koszul_shift: None,
        }
    }

    /// Sets the `v`-power carried by the Koszul term of the second abelian sequence.
    pub fn with_koszul_shift(mut self, shift: i64) -> Self {
        self.koszul_shift = Some(shift);
        self
    }

    pub fn koszul_shift(&self) -> Option<i64> {
        self.koszul_shift
    }

    /// Adds or replaces one class.
    pub fn with_class(mut self, label: SimpleLabel, class: TorusElement, norm: Normalization) -> Self {
        self.classes.insert(label, class);
        self.normalizations.insert(label, norm);
        self
    }

    /// Fits `class(label) = v^m Pdet^f z` against a single relation.
    pub fn fit_one(
        &self,
        label: SimpleLabel,
        z: &TorusElement,
        template: &RelationInstance,
    ) -> Result<Option<(TorusElement, Normalization)>, CoulombError> {
        fit_class(label, z, std::slice::from_ref(template), self, FitRole::Main)
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    /// `v`-exponent of one unit of loop shift (`2s`).
    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn window(&self) -> Option<i64> {
        self.window
    }

    pub fn walk(&self) -> &LabeledWalk {
        &self.walk
    }

    pub fn unit(&self) -> TorusElement {
        TorusElement::one(self.form.clone())
    }

    /// The class of a label, if assigned.
    pub fn class(&self, label: SimpleLabel) -> Option<TorusElement> {
        match label {
            SimpleLabel::Unit => Some(self.unit()),
            _ => self.classes.get(&label).cloned(),
        }
    }

    pub fn frozen_class(&self) -> Option<TorusElement> {
        self.class(SimpleLabel::Pdet)
    }

    pub fn labels(&self) -> impl Iterator<Item = &SimpleLabel> + '_ {
        self.classes.keys()
    }

    pub fn normalization(&self, label: SimpleLabel) -> Option<&Normalization> {
        self.normalizations.get(&label)
    }

    pub fn normalizations(&self) -> &BTreeMap<SimpleLabel, Normalization> {
        &self.normalizations
    }

    /// Labels that can ever be assigned with the registry's window; instances
    /// mentioning anything else are skipped rather than reported missing.
    pub fn in_scope(&self, label: SimpleLabel) -> bool {
        let Some(w) = self.window else {
            return label == SimpleLabel::Unit || self.classes.contains_key(&label);
        };
        match label {
            SimpleLabel::Unit | SimpleLabel::Pdet => true,
            SimpleLabel::KoszulUnit => false,
            SimpleLabel::P { k, l } => match k.abs() {
                1 => l.abs() <= w,
                2 if k > 0 => l.abs() <= w,
                2 => l == 0,
                _ => false,
            },
        }
    }

    /// Evaluates both sides; `None` when a class is missing.
    pub fn evaluate(&self, r: &RelationInstance) -> Result<Option<(TorusElement, TorusElement)>, TorusError> {
        let unit = self.unit();
        let look = |l| self.class(l);
        let Some(lhs) = r.lhs.evaluate(self.sigma, &unit, &look)? else {
            return Ok(None);
        };
        let mut rhs = TorusElement::zero(self.form.clone());
        for t in &r.rhs {
            let Some(x) = t.evaluate(self.sigma, &unit, &look)? else {
                return Ok(None);
            };
            rhs = rhs.add(&x)?;
        }
        Ok(Some((lhs, rhs)))
    }

    /// `v^m Pdet^f`-normalizations `(f, m)` with `x = v^m Pdet^f class(label)`.
    pub fn match_class(&self, x: &TorusElement, label: SimpleLabel) -> Result<Option<(i64, i64)>, TorusError> {
        let (Some(target), Some(det)) = (self.class(label), self.frozen_class()) else {
            return Ok(None);
        };
        match_up_to_frozen(x, &target, &det)
    }

    pub fn to_json(&self) -> Value {
        let classes: serde_json::Map<String, Value> = self
            .classes
            .iter()
            .map(|(l, c)| {
                let mut entry = json!({"class": c.to_json(), "display": c.to_string()});
                if let Some(n) = self.normalizations.get(l) {
                    entry["normalization"] = n.to_json();
                }
                if let Some(d) = self.walk.first_depth.get(l) {
                    entry["depth"] = json!(d);
                }
                (l.to_string(), entry)
            })
            .collect();
        json!({
            "sigma": self.sigma,
            "window": self.window,
            "classes": classes,
            "clusters": self.walk.clusters.len(),
        })
    }
}

/// `(f, m)` with `x = v^m det^f target`, searching `|f| <= FROZEN_RANGE`.
pub fn match_up_to_frozen(
    x: &TorusElement,
    target: &TorusElement,
    det: &TorusElement,
) -> Result<Option<(i64, i64)>, TorusError> {
    for f in (0..=FROZEN_RANGE).flat_map(|a| if a == 0 { vec![0] } else { vec![a, -a] }) {
        let cand = det.pow(f)?.multiply(target)?;
        if let Some(m) = x.detect_q_proportional(&cand)? {
            return Ok(Some((f, m)));
        }
    }
    Ok(None)
}

/// Fits `class(unknown) = v^m Pdet^f z` against one relation in which
/// `unknown` occurs exactly once; returns every `(f, m)` that works.
fn fit_against(
    r: &RelationInstance,
    unknown: SimpleLabel,
    z: &TorusElement,
    reg: &SimpleClassRegistry,
) -> Result<Option<Vec<(i64, i64)>>, CoulombError> {
    let occurrences: Vec<(usize, i64)> = std::iter::once(&r.lhs)
        .chain(&r.rhs)
        .enumerate()
        .flat_map(|(ti, t)| t.factors.iter().filter(|f| f.0 == unknown).map(move |f| (ti, f.1)))
        .collect();
    let [(term_idx, 1)] = occurrences[..] else {
        return Ok(None);
    };
    if r.labels().iter().any(|&l| l != unknown && reg.class(l).is_none()) {
        return Ok(None);
    }
    let det = reg.frozen_class().ok_or_else(|| CoulombError::Registry {
        label: SimpleLabel::Pdet.to_string(),
        reason: "frozen class missing".into(),
    })?;
    let unit = reg.unit();
    let eval = |t: &Term, zf: &TorusElement| -> Result<TorusElement, TorusError> {
        let look = |l: SimpleLabel| if l == unknown { Some(zf.clone()) } else { reg.class(l) };
        Ok(t.evaluate(reg.sigma, &unit, &look)?.expect("all classes known"))
    };
    let mut sols = Vec::new();
    for f in -FROZEN_RANGE..=FROZEN_RANGE {
        let zf = det.pow(f)?.multiply(z)?;
        let m = if term_idx == 0 {
            let mut rhs = TorusElement::zero(reg.form.clone());
            for t in &r.rhs {
                rhs = rhs.add(&eval(t, &zf)?)?;
            }
            rhs.detect_q_proportional(&eval(&r.lhs, &zf)?)?
        } else {
            let mut rest = eval(&r.lhs, &zf)?;
            for (i, t) in r.rhs.iter().enumerate() {
                if i + 1 != term_idx {
                    rest = rest.sub(&eval(t, &zf)?)?;
                }
            }
            rest.detect_q_proportional(&eval(&r.rhs[term_idx - 1], &zf)?)?
        };
        if let Some(m) = m {
            sols.push((f, m));
        }
    }
    Ok(Some(sols))
}

/// First template in `templates` giving a unique normalization.
fn fit_class(
    label: SimpleLabel,
    z: &TorusElement,
    templates: &[RelationInstance],
    reg: &SimpleClassRegistry,
    role: FitRole,
) -> Result<Option<(TorusElement, Normalization)>, CoulombError> {
    for t in templates {
        if t.kind != RelationKind::Sequence {
            continue;
        }
        if let Some(sols) = fit_against(t, label, z, reg)? {
            if let [(f, m)] = sols[..] {
                let det = reg.frozen_class().expect("checked in fit_against");
                let class = det.pow(f)?.multiply(z)?.shift_v(m);
                return Ok(Some((
                    class,
                    Normalization {
                        template: t.id(),
                        frozen_power: f,
                        v_power: m,
                        role,
                    },
                )));
            }
        }
    }
    Ok(None)
}

/// Walks the exchange graph from the rank-two seed to `depth`, then fits every
/// label with `|l| <= ell_window` to its cluster variable.
pub fn build_registry(depth: usize, ell_window: i64) -> Result<SimpleClassRegistry, CoulombError> {
    let seed = initial_seed_gl2();
    let sigma = fit_loop_shift(&seed, &initial_commutations())?;
    build_registry_from(&seed, sigma, depth, ell_window)
}

pub fn build_registry_from(
    seed: &QuantumSeed,
    sigma: i64,
    depth: usize,
    ell_window: i64,
) -> Result<SimpleClassRegistry, CoulombError> {
    if depth < 1 {
        return Err(CoulombError::Depth("registry needs depth >= 1".into()));
    }
    let walk = LabeledWalk::run(seed, depth)?;
    let mut reg = SimpleClassRegistry {
        form: seed.ambient_form().clone(),
        sigma,
        window: Some(ell_window),
        classes: seed_classes(seed),
        normalizations: BTreeMap::new(),
        walk,
        koszul_shift: None,
    };
    let templates = sequence_templates(-ell_window - 2, ell_window + 2);
    let wanted: Vec<SimpleLabel> = reg
        .walk
        .variables
        .keys()
        .copied()
        .filter(|l| l.is_strip() && reg.in_scope(*l))
        .collect();
    let main_pass = |reg: &mut SimpleClassRegistry| -> Result<(), CoulombError> {
        loop {
            let mut progress = false;
            for &label in &wanted {
                if reg.classes.contains_key(&label) {
                    continue;
                }
                let z = reg.walk.variables[&label].clone();
                if let Some((c, n)) = fit_class(label, &z, &templates, reg, FitRole::Main)? {
                    reg.classes.insert(label, c);
                    reg.normalizations.insert(label, n);
                    progress = true;
                }
            }
            if !progress {
                return Ok(());
            }
        }
    };
    main_pass(&mut reg)?;
    let top = reg.class(SimpleLabel::p(2, 0)).ok_or_else(|| CoulombError::Registry {
        label: "P_{2,0}".into(),
        reason: "missing from the initial seed".into(),
    })?;
    for l in (-ell_window..=ell_window).filter(|&l| l != 0) {
        let label = SimpleLabel::p(2, l);
        if let Some((c, n)) = fit_class(label, &top, &templates, &reg, FitRole::Auxiliary)? {
            reg.classes.insert(label, c);
            reg.normalizations.insert(label, n);
        }
    }
    main_pass(&mut reg)?;
    let bottom = SimpleLabel::p(-2, 0);
    if let Some(z) = reg.walk.variables.get(&bottom).cloned() {
        if let Some((c, n)) = fit_class(bottom, &z, &[bottom_convention()], &reg, FitRole::Convention)? {
            reg.classes.insert(bottom, c);
            reg.normalizations.insert(bottom, n);
        }
    }
    let unfitted: Vec<String> = reg
        .walk
        .variables
        .keys()
        .filter(|l| reg.in_scope(**l) && !reg.classes.contains_key(l))
        .map(ToString::to_string)
        .collect();
    if let Some(first) = unfitted.first() {
        return Err(CoulombError::Registry {
            label: first.clone(),
            reason: format!("no relation fixes a unique normalization (unfitted: {})", unfitted.join(", ")),
        });
    }
    Ok(reg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_data() {
        let s = initial_seed_gl2();
        assert_eq!(s.form().rows()[0], vec![0, -2, -2, 2]);
        assert_eq!(s.exchange().rows()[3], vec![0, -1, 1]);
        let c = s.check_compatibility();
        assert_eq!(c.d, Some(-2));
    }

    #[test]
    fn loop_shift() {
        let s = initial_seed_gl2();
        assert_eq!(fit_loop_shift(&s, &initial_commutations()).unwrap(), -2);
        assert!(matches!(fit_loop_shift(&s, &[]), Err(CoulombError::AmbiguousShift(v)) if v.len() == 6));
    }
}
