use std::collections::BTreeMap;
use std::fmt;

use crate::error::TorusError;
use crate::qtorus::TorusElement;

use super::labels::SimpleLabel;

/// Ordered product of classes with a loop shift `{loop_shift}` and an extra `v^v_shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<(SimpleLabel, i64)>,
    pub loop_shift: i64,
    pub v_shift: i64,
}

impl Term {
    pub fn new(labels: &[SimpleLabel], loop_shift: i64) -> Self {
        Self {
            factors: labels.iter().map(|&l| (l, 1)).collect(),
            loop_shift,
            v_shift: 0,
        }
    }

    pub fn with_powers(factors: &[(SimpleLabel, i64)], loop_shift: i64) -> Self {
        Self {
            factors: factors.to_vec(),
            loop_shift,
            v_shift: 0,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = SimpleLabel> + '_ {
        self.factors.iter().map(|f| f.0)
    }

    /// `v^{sigma * loop_shift + v_shift}` times the ordered product, or `None`
    /// if some class is unknown.
    pub fn evaluate<F>(&self, sigma: i64, unit: &TorusElement, class: &F) -> Result<Option<TorusElement>, TorusError>
    where
        F: Fn(SimpleLabel) -> Option<TorusElement>,
    {
        let mut acc = unit.clone();
        for &(label, power) in &self.factors {
            let Some(c) = class(label) else {
                return Ok(None);
            };
            acc = acc.multiply(&c.pow(power)?)?;
        }
        Ok(Some(acc.shift_v(sigma * self.loop_shift + self.v_shift)))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            f.write_str("[Unit]")?;
        }
        for (label, power) in &self.factors {
            write!(f, "[{label}]")?;
            if *power != 1 {
                write!(f, "^{power}")?;
            }
        }
        if self.loop_shift != 0 {
            write!(f, "{{{}}}", self.loop_shift)?;
        }
        if self.v_shift != 0 {
            write!(f, " v^{}", self.v_shift)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `[B] = [A] + [C]` from a short exact sequence.
    Sequence,
    /// Two products agree up to the recorded loop shift.
    Commutation,
}

/// A relation template instantiated at concrete parameters: `lhs = sum(rhs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: String,
    pub family: &'static str,
    pub params: BTreeMap<String, i64>,
    pub kind: RelationKind,
    pub lhs: Term,
    pub rhs: Vec<Term>,
}

impl RelationInstance {
    fn new(name: &str, family: &'static str, params: &[(&str, i64)], kind: RelationKind, lhs: Term, rhs: Vec<Term>) -> Self {
        Self {
            name: name.to_string(),
            family,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            kind,
            lhs,
            rhs,
        }
    }

    /// Every label occurrence, left to right.
    pub fn labels(&self) -> Vec<SimpleLabel> {
        std::iter::once(&self.lhs)
            .chain(&self.rhs)
            .flat_map(|t| t.labels())
            .collect()
    }

    /// `name(k=..,l=..)`.
    pub fn id(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, ps.join(","))
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.lhs)?;
        for (i, t) in self.rhs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn p(k: i64, l: i64) -> SimpleLabel {
    SimpleLabel::p(k, l)
}

const DET: SimpleLabel = SimpleLabel::Pdet;

pub const FAMILY_TOP: &str = "exchange-at-top-vertex";
pub const FAMILY_STRIP: &str = "strip-exchange";
pub const FAMILY_COMMUTE: &str = "commutation";
pub const FAMILY_GLUE: &str = "gluing";
pub const FAMILY_ABELIAN: &str = "abelian";
pub const FAMILY_CONVENTION: &str = "normalization-convention";

/// Exchange at `P_{n,0}`, first ordering.
pub fn mut1(n: i64, l: i64) -> RelationInstance {
    RelationInstance::new(
        "mut1",
        FAMILY_TOP,
        &[("n", n), ("l", l)],
        RelationKind::Sequence,
        Term::new(&[p(n, l), DET, p(-1, -l)], n),
        vec![Term::new(&[DET, p(n - 1, l)], -n), Term::new(&[p(n - 1, l + 1)], 0)],
    )
}

/// Exchange at `P_{n,0}`, opposite ordering.
pub fn mut2(n: i64, l: i64) -> RelationInstance {
    RelationInstance::new(
        "mut2",
        FAMILY_TOP,
        &[("n", n), ("l", l)],
        RelationKind::Sequence,
        Term::new(&[p(-1, -l), DET, p(n, l)], -n),
        vec![Term::new(&[p(n - 1, l + 1)], 0), Term::new(&[p(n - 1, l), DET], n)],
    )
}

/// Strip exchange `P_{k,l+1} * P_{k,l-1}`.
pub fn old1(k: i64, l: i64) -> RelationInstance {
    RelationInstance::new(
        "old1",
        FAMILY_STRIP,
        &[("k", k), ("l", l)],
        RelationKind::Sequence,
        Term::new(&[p(k, l + 1), p(k, l - 1)], -2 * k),
        vec![Term::new(&[p(k - 1, l), p(k + 1, l)], -1), Term::new(&[p(k, l), p(k, l)], 0)],
    )
}

/// Strip exchange `P_{k,l-1} * P_{k,l+1}`.
pub fn old2(k: i64, l: i64) -> RelationInstance {
    RelationInstance::new(
        "old2",
        FAMILY_STRIP,
        &[("k", k), ("l", l)],
        RelationKind::Sequence,
        Term::new(&[p(k, l - 1), p(k, l + 1)], 2 * k),
        vec![Term::new(&[p(k, l), p(k, l)], 0), Term::new(&[p(k + 1, l), p(k - 1, l)], 1)],
    )
}

/// The four gluing sequences between the two strips (rank two).
pub fn glue(i: u8, l: i64) -> RelationInstance {
    let inv = (DET, -1);
    let (lhs, rhs) = match i {
        1 => (
            Term::with_powers(&[(p(1, 1 + l), 1), (p(-1, 1 - l), 1), inv], 0),
            vec![Term::new(&[], -1), Term::new(&[p(1, l), p(-1, -l)], 0)],
        ),
        2 => (
            Term::with_powers(&[inv, (p(-1, 1 - l), 1), (p(1, 1 + l), 1)], 0),
            vec![Term::new(&[p(-1, -l), p(1, l)], 0), Term::new(&[], 1)],
        ),
        3 => (
            Term::new(&[p(1, l), p(-1, -1 - l), DET], 0),
            vec![Term::new(&[p(1, 1 + l), p(-1, -l)], 0), Term::new(&[], 1)],
        ),
        4 => (
            Term::new(&[DET, p(-1, -1 - l), p(1, l)], 0),
            vec![Term::new(&[], -1), Term::new(&[p(-1, -l), p(1, 1 + l)], 0)],
        ),
        _ => panic!("gluing sequences are numbered 1 to 4"),
    };
    RelationInstance::new(&format!("g{i}"), FAMILY_GLUE, &[("l", l)], RelationKind::Sequence, lhs, rhs)
}

fn swap(name: &str, l: i64, a: SimpleLabel, b: SimpleLabel, shift: i64) -> RelationInstance {
    RelationInstance::new(
        name,
        FAMILY_COMMUTE,
        &[("l", l)],
        RelationKind::Commutation,
        Term::new(&[a, b], 0),
        vec![Term::new(&[b, a], shift)],
    )
}

/// The six families of commutation relations (rank two).
pub fn commute(i: u8, l: i64) -> RelationInstance {
    match i {
        1 => swap("c1", l, p(2, 0), p(1, l), -2 * l),
        2 => swap("c2", l, p(-2, 0), p(-1, l), 2 * l),
        3 => swap("c3", l, p(1, l), p(1, l + 1), -2),
        4 => swap("c4", l, p(-1, l), p(-1, l + 1), 2),
        5 => swap("c5", l, p(1, l), p(-1, -l), 0),
        6 => swap("c6", l, p(1, l), p(-1, 1 - l), 0),
        _ => panic!("commutation families are numbered 1 to 6"),
    }
}

/// Moving the inverse determinant past `P_{-1,1}`, used when composing gluing sequences.
pub fn glue_aux() -> RelationInstance {
    RelationInstance::new(
        "glue-aux",
        FAMILY_GLUE,
        &[("l", 0)],
        RelationKind::Commutation,
        Term::with_powers(&[(p(-1, 1), 1), (DET, -1)], 0),
        vec![Term::with_powers(&[(DET, -1), (p(-1, 1), 1)], -2)],
    )
}

/// Mirror image of `mut1(2, 0)` used only to fix the normalization of `P_{-2,0}`.
pub fn bottom_convention() -> RelationInstance {
    RelationInstance::new(
        "bottom-convention",
        FAMILY_CONVENTION,
        &[("l", 0)],
        RelationKind::Sequence,
        Term::new(&[p(-2, 0), DET, p(1, 0)], -2),
        vec![Term::new(&[DET, p(-1, 0)], 2), Term::new(&[p(-1, 1)], 0)],
    )
}

/// The two abelian exchange sequences of the rank-one example; the second
/// Koszul term carries `v^{koszul_shift}`.
pub fn abelian(koszul_shift: i64) -> Vec<RelationInstance> {
    let (a, b) = (p(1, 0), p(-1, 0));
    let mut second_koszul = Term::new(&[SimpleLabel::KoszulUnit], 0);
    second_koszul.v_shift = koszul_shift;
    vec![
        RelationInstance::new(
            "ab1",
            FAMILY_ABELIAN,
            &[],
            RelationKind::Sequence,
            Term::new(&[a, b], 0),
            vec![Term::new(&[SimpleLabel::Unit], 0), Term::new(&[SimpleLabel::KoszulUnit], 0)],
        ),
        RelationInstance::new(
            "ab2",
            FAMILY_ABELIAN,
            &[],
            RelationKind::Sequence,
            Term::new(&[b, a], 0),
            vec![Term::new(&[SimpleLabel::Unit], 0), second_koszul],
        ),
    ]
}

/// Sequence templates of rank two used for fitting, in fitting priority order.
pub fn sequence_templates(l_lo: i64, l_hi: i64) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for l in l_lo..=l_hi {
        out.push(mut1(2, l));
        out.push(mut2(2, l));
        out.push(old1(1, l));
        out.push(old2(1, l));
        for i in 1..=4 {
            out.push(glue(i, l));
        }
    }
    out
}

/// The relation suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    MutN,
    Old,
    Commute,
    Glue,
    Abelian,
}

impl Suite {
    pub const GL2: [Suite; 4] = [Suite::MutN, Suite::Old, Suite::Commute, Suite::Glue];

    pub fn name(&self) -> &'static str {
        match self {
            Self::MutN => "mut_n",
            Self::Old => "old",
            Self::Commute => "commute",
            Self::Glue => "glue",
            Self::Abelian => "abelian",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mut_n" => Ok(Self::MutN),
            "old" => Ok(Self::Old),
            "commute" => Ok(Self::Commute),
            "glue" => Ok(Self::Glue),
            "abelian" => Ok(Self::Abelian),
            _ => Err(format!("unknown suite {s}")),
        }
    }
}

/// Rank-two instances of a suite for `l` in `[-window, window]`.
/// The abelian suite needs the Koszul shift and is built by [`abelian`].
pub fn suite_instances(suite: Suite, window: i64) -> Vec<RelationInstance> {
    let ls = -window..=window;
    match suite {
        Suite::MutN => ls.flat_map(|l| [mut1(2, l), mut2(2, l)]).collect(),
        Suite::Old => ls.flat_map(|l| [old1(1, l), old2(1, l)]).collect(),
        Suite::Commute => ls.flat_map(|l| (1..=6).map(move |i| commute(i, l))).collect(),
        Suite::Glue => {
            let mut v: Vec<RelationInstance> = ls.flat_map(|l| (1..=4).map(move |i| glue(i, l))).collect();
            v.push(glue_aux());
            v
        }
        Suite::Abelian => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(
            mut1(2, 0).to_string(),
            "[P_{2,0}][P_{0,det}][P_{-1,0}]{2} = [P_{0,det}][P_{1,0}]{-2} + [P_{1,1}]"
        );
        assert_eq!(old1(1, 0).id(), "old1(k=1,l=0)");
        assert_eq!(glue(1, 0).lhs.to_string(), "[P_{1,1}][P_{-1,1}][P_{0,det}]^-1");
    }

    #[test]
    fn suite_sizes() {
        assert_eq!(suite_instances(Suite::MutN, 2).len(), 10);
        assert_eq!(suite_instances(Suite::Commute, 2).len(), 30);
        assert_eq!(suite_instances(Suite::Glue, 2).len(), 21);
    }
}
