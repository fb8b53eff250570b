use std::fmt;
use std::str::FromStr;

use crate::error::CoulombError;

/// Symbolic name of a simple object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleLabel {
    /// `P_{k,l}` with `k != 0`.
    P { k: i64, l: i64 },
    /// The frozen determinant class `P_{0,det}`.
    Pdet,
    /// `P_{0,l}`, the monoidal unit.
    Unit,
    /// The Koszul-shifted unit of the rank-one example.
    KoszulUnit,
}

impl SimpleLabel {
    /// `P_{k,l}`, collapsing `k = 0` to the unit.
    pub fn p(k: i64, l: i64) -> Self {
        if k == 0 {
            Self::Unit
        } else {
            Self::P { k, l }
        }
    }

    pub fn k(&self) -> Option<i64> {
        match *self {
            Self::P { k, .. } => Some(k),
            _ => None,
        }
    }

    pub fn l(&self) -> Option<i64> {
        match *self {
            Self::P { l, .. } => Some(l),
            _ => None,
        }
    }

    /// Strip label `P_{+-1,l}`.
    pub fn is_strip(&self) -> bool {
        matches!(self, Self::P { k: 1 | -1, .. })
    }
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::P { k, l } => write!(f, "P_{{{k},{l}}}"),
            Self::Pdet => f.write_str("P_{0,det}"),
            Self::Unit => f.write_str("Unit"),
            Self::KoszulUnit => f.write_str("KoszulUnit"),
        }
    }
}

impl FromStr for SimpleLabel {
    type Err = CoulombError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoulombError::Registry {
            label: s.to_string(),
            reason: "unparseable label".into(),
        };
        match s {
            "P_{0,det}" => return Ok(Self::Pdet),
            "Unit" => return Ok(Self::Unit),
            "KoszulUnit" => return Ok(Self::KoszulUnit),
            _ => {}
        }
        let inner = s
            .strip_prefix("P_{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let (k, l) = inner.split_once(',').ok_or_else(bad)?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        let l: i64 = l.trim().parse().map_err(|_| bad())?;
        Ok(Self::p(k, l))
    }
}

/// Neighbours in the labeled exchange graph picture, for labels with finitely many.
pub fn finite_neighbours(a: SimpleLabel) -> Option<Vec<SimpleLabel>> {
    match a {
        SimpleLabel::P { k: 1, l } => Some(vec![
            SimpleLabel::p(2, 0),
            SimpleLabel::p(1, l - 1),
            SimpleLabel::p(1, l + 1),
            SimpleLabel::p(-1, -l),
            SimpleLabel::p(-1, 1 - l),
        ]),
        SimpleLabel::P { k: -1, l } => Some(vec![
            SimpleLabel::p(-2, 0),
            SimpleLabel::p(-1, l - 1),
            SimpleLabel::p(-1, l + 1),
            SimpleLabel::p(1, -l),
            SimpleLabel::p(1, 1 - l),
        ]),
        _ => None,
    }
}

/// Whether two labels share an edge of the strip-with-fans picture.
pub fn adjacent(a: SimpleLabel, b: SimpleLabel) -> bool {
    use SimpleLabel::P;
    match (a, b) {
        (P { k: 2, l: 0 }, P { k: 1, .. }) | (P { k: 1, .. }, P { k: 2, l: 0 }) => true,
        (P { k: -2, l: 0 }, P { k: -1, .. }) | (P { k: -1, .. }, P { k: -2, l: 0 }) => true,
        (P { k: 1, l: x }, P { k: 1, l: y }) | (P { k: -1, l: x }, P { k: -1, l: y }) => (x - y).abs() == 1,
        (P { k: 1, l: x }, P { k: -1, l: y }) | (P { k: -1, l: y }, P { k: 1, l: x }) => y == -x || y == 1 - x,
        _ => false,
    }
}

/// The label replacing `removed` when the other two of a three-label cluster are kept.
pub fn exchange_partner(kept: [SimpleLabel; 2], removed: SimpleLabel) -> Option<SimpleLabel> {
    let (anchor, other) = if finite_neighbours(kept[0]).is_some() {
        (kept[0], kept[1])
    } else {
        (kept[1], kept[0])
    };
    let cands: Vec<SimpleLabel> = finite_neighbours(anchor)?
        .into_iter()
        .filter(|&c| c != removed && c != other && adjacent(c, other))
        .collect();
    match cands.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for l in [
            SimpleLabel::p(1, -3),
            SimpleLabel::p(-2, 0),
            SimpleLabel::Pdet,
            SimpleLabel::Unit,
            SimpleLabel::KoszulUnit,
        ] {
            assert_eq!(l.to_string().parse::<SimpleLabel>().unwrap(), l);
        }
        assert_eq!("P_{0,5}".parse::<SimpleLabel>().unwrap(), SimpleLabel::Unit);
        assert!("Q_{1,1}".parse::<SimpleLabel>().is_err());
    }

    #[test]
    fn initial_cluster_partners() {
        let (p11, p10, p20) = (SimpleLabel::p(1, 1), SimpleLabel::p(1, 0), SimpleLabel::p(2, 0));
        assert_eq!(exchange_partner([p11, p10], p20), Some(SimpleLabel::p(-1, 0)));
        assert_eq!(exchange_partner([p10, p20], p11), Some(SimpleLabel::p(1, -1)));
        assert_eq!(exchange_partner([p11, p20], p10), Some(SimpleLabel::p(1, 2)));
    }
}
