//! Quantum tori over `Z[v^{±1}]` with bar-normalized monomials.
//!
//! A term `(a, c)` of a [`TorusElement`] stands for `c * X^(a)` where
//! `X^(a) = v^{-sum_{i<j} a_i a_j L_ij} X_1^{a_1} ... X_n^{a_n}`.
//! Products follow `X^(a) X^(b) = v^{L(a,b)} X^(a+b)`, so
//! `X_i X_j = v^{2 L_ij} X_j X_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::TorusError;
use crate::scalar::QuantumScalar;

pub const MAX_RANK: usize = 64;

pub type Exponent = Vec<i64>;

/// Integer skew-symmetric form `L` of rank `n <= 64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewForm {
    rank: usize,
    entries: Vec<i64>,
}

impl SkewForm {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self, TorusError> {
        let n = rows.len();
        if n > MAX_RANK {
            return Err(TorusError::RankTooLarge(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(TorusError::ExponentLength {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(n, entries)
    }

    pub fn from_flat(rank: usize, entries: Vec<i64>) -> Result<Self, TorusError> {
        if rank > MAX_RANK {
            return Err(TorusError::RankTooLarge(rank));
        }
        if entries.len() != rank * rank {
            return Err(TorusError::ExponentLength {
                expected: rank * rank,
                got: entries.len(),
            });
        }
        for i in 0..rank {
            for j in i..rank {
                if entries[i * rank + j] != -entries[j * rank + i] {
                    return Err(TorusError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(Self { rank, entries })
    }

    pub fn zero(rank: usize) -> Result<Self, TorusError> {
        Self::from_flat(rank, vec![0; rank * rank])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank.max(1)).map(<[i64]>::to_vec).take(self.rank).collect()
    }

    /// `L b` as a column vector.
    pub fn apply(&self, b: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.get(i, j) * b[j]).sum())
            .collect()
    }

    /// `L(a, b) = sum_ij a_i b_j L_ij`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let row = &self.entries[i * self.rank..(i + 1) * self.rank];
            s += a[i] * row.iter().zip(b).map(|(l, bj)| l * bj).sum::<i64>();
        }
        s
    }

    /// The v-exponent of the bar normalization: `-sum_{i<j} a_i a_j L_ij`.
    pub fn normalization(&self, a: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                s += a[i] * a[j] * self.get(i, j);
            }
        }
        -s
    }

    pub fn negated(&self) -> Self {
        Self {
            rank: self.rank,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// `E^T L E` for a square integer matrix `E` given row-major.
    pub fn congruence(&self, e: &[i64]) -> Self {
        let n = self.rank;
        let mut le = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                le[i * n + j] = (0..n).map(|k| self.get(i, k) * e[k * n + j]).sum();
            }
        }
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n).map(|k| e[k * n + i] * le[k * n + j]).sum();
            }
        }
        Self {
            rank: n,
            entries: out,
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.rows())
    }
}

/// Finite sum of bar-normalized monomials over a fixed skew form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    form: Arc<SkewForm>,
    terms: BTreeMap<Exponent, QuantumScalar>,
}

fn same_form(a: &Arc<SkewForm>, b: &Arc<SkewForm>) -> Result<(), TorusError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(TorusError::FormMismatch {
            left: a.rank(),
            right: b.rank(),
        })
    }
}

impl TorusElement {
    pub fn zero(form: Arc<SkewForm>) -> Self {
        Self {
            form,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(form: Arc<SkewForm>) -> Self {
        let n = form.rank();
        Self::term(form, vec![0; n], QuantumScalar::one()).expect("zero exponent has the right length")
    }

    pub fn monomial(form: Arc<SkewForm>, exp: Exponent) -> Result<Self, TorusError> {
        Self::term(form, exp, QuantumScalar::one())
    }

    pub fn term(form: Arc<SkewForm>, exp: Exponent, c: QuantumScalar) -> Result<Self, TorusError> {
        if exp.len() != form.rank() {
            return Err(TorusError::ExponentLength {
                expected: form.rank(),
                got: exp.len(),
            });
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Ok(Self { form, terms })
    }

    /// `X_i` as the bar-normalized monomial `X^(e_i)`.
    pub fn generator(form: Arc<SkewForm>, i: usize) -> Self {
        let mut e = vec![0; form.rank()];
        e[i] = 1;
        Self::monomial(form, e).expect("unit vector has the right length")
    }

    pub fn from_terms<I>(form: Arc<SkewForm>, terms: I) -> Result<Self, TorusError>
    where
        I: IntoIterator<Item = (Exponent, QuantumScalar)>,
    {
        let mut out = Self::zero(form);
        for (a, c) in terms {
            if a.len() != out.form.rank() {
                return Err(TorusError::ExponentLength {
                    expected: out.form.rank(),
                    got: a.len(),
                });
            }
            out.add_term(a, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, a: Exponent, c: &QuantumScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &QuantumScalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &[i64]) -> QuantumScalar {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, TorusError> {
        same_form(&self.form, &other.form)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TorusError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            form: self.form.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, TorusError> {
        same_form(&self.form, &other.form)?;
        let n = self.rank();
        let images: Vec<(&Exponent, Vec<i64>, &QuantumScalar)> = other
            .terms
            .iter()
            .map(|(b, c)| (b, self.form.apply(b), c))
            .collect();
        let mut out = Self::zero(self.form.clone());
        for (a, ca) in &self.terms {
            for (b, lb, cb) in &images {
                let twist: i64 = a.iter().zip(lb).map(|(x, y)| x * y).sum();
                let sum: Exponent = (0..n).map(|i| a[i] + b[i]).collect();
                out.add_term(sum, &(ca * *cb).shift(twist));
            }
        }
        Ok(out)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a, I>(form: Arc<SkewForm>, factors: I) -> Result<Self, TorusError>
    where
        I: IntoIterator<Item = &'a TorusElement>,
    {
        let mut acc = Self::one(form);
        for f in factors {
            acc = acc.multiply(f)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &QuantumScalar) -> Self {
        let mut out = Self::zero(self.form.clone());
        for (a, x) in &self.terms {
            out.add_term(a.clone(), &(x * c));
        }
        out
    }

    /// Multiplies by `v^m`.
    pub fn shift_v(&self, m: i64) -> Self {
        Self {
            form: self.form.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.shift(m))).collect(),
        }
    }

    pub fn bar(&self) -> Self {
        Self {
            form: self.form.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.bar())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.values().all(QuantumScalar::is_bar_invariant)
    }

    /// All coefficients lie in `Z_{>=0}[v^{±1}]`.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(QuantumScalar::is_nonnegative)
    }

    /// Returns `m` with `self = v^m * other`, if there is one.
    pub fn detect_q_proportional(&self, other: &Self) -> Result<Option<i64>, TorusError> {
        same_form(&self.form, &other.form)?;
        if self.terms.len() != other.terms.len() {
            return Ok(None);
        }
        let mut found: Option<i64> = None;
        for ((a, x), (b, y)) in self.terms.iter().zip(&other.terms) {
            if a != b {
                return Ok(None);
            }
            let m = match (x.min_exp(), y.min_exp()) {
                (Some(p), Some(q)) => p - q,
                _ => return Ok(None),
            };
            if found.is_some_and(|f| f != m) || y.shift(m) != *x {
                return Ok(None);
            }
            found = Some(m);
        }
        Ok(Some(found.unwrap_or(0)))
    }

    pub fn specialize_classical(&self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::default();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.eval_at_one());
        }
        out
    }

    /// The single term, if the element is a monomial.
    pub fn as_monomial(&self) -> Option<(&Exponent, &QuantumScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of `±v^e X^(a)`.
    pub fn inverse_monomial(&self) -> Result<Self, TorusError> {
        let (a, c) = self.as_monomial().ok_or(TorusError::NotInvertible)?;
        let (sign, e) = c.as_unit().ok_or(TorusError::NotInvertible)?;
        let neg: Exponent = a.iter().map(|x| -x).collect();
        Self::term(self.form.clone(), neg, QuantumScalar::monomial(-e, sign))
    }

    pub fn pow(&self, k: i64) -> Result<Self, TorusError> {
        let base = if k < 0 { self.inverse_monomial()? } else { self.clone() };
        let mut acc = Self::one(self.form.clone());
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    pub fn leading_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    /// Solves `q * divisor = self` for `q`, failing unless the division is exact.
    pub fn right_divide(&self, divisor: &Self) -> Result<Self, TorusError> {
        same_form(&self.form, &divisor.form)?;
        let (dl, dc) = divisor.terms.iter().next_back().ok_or(TorusError::DivisionByZero)?;
        let n = self.rank();
        if self.is_zero() {
            return Ok(Self::zero(self.form.clone()));
        }
        // any exact quotient has exponents inside this box
        let bounds: Vec<(i64, i64)> = (0..n)
            .map(|c| {
                let (plo, phi) = coord_range(&self.terms, c);
                let (dlo, dhi) = coord_range(&divisor.terms, c);
                (plo - dlo, phi - dhi)
            })
            .collect();
        let mut quotient = Self::zero(self.form.clone());
        let mut rem = self.clone();
        while let Some((rl, rc)) = rem.terms.iter().next_back() {
            let q: Exponent = rl.iter().zip(dl).map(|(r, d)| r - d).collect();
            if q.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(TorusError::NotDivisible);
            }
            let twist = self.form.pairing(&q, dl);
            let c = rc.exact_div(&dc.shift(twist)).ok_or(TorusError::NotDivisible)?;
            let t = Self::term(self.form.clone(), q, c)?;
            rem = rem.sub(&t.multiply(divisor)?)?;
            quotient = quotient.add(&t)?;
        }
        Ok(quotient)
    }

    /// Canonical compact serialization, used for hashing and ordering.
    pub fn fingerprint(&self) -> String {
        let mut s = String::new();
        for (a, c) in &self.terms {
            s.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&x.to_string());
            }
            s.push_str("]{");
            for (i, (e, k)) in c.terms().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&format!("{e}:{k}"));
            }
            s.push('}');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(a, c)| json!({ "exponent": a, "coefficient": c.to_json() }))
                .collect(),
        )
    }

    pub fn from_json(form: Arc<SkewForm>, v: &Value) -> Result<Self, TorusError> {
        let arr = v
            .as_array()
            .ok_or_else(|| TorusError::Parse("expected an array of terms".into()))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let exp = t
                .get("exponent")
                .and_then(Value::as_array)
                .ok_or_else(|| TorusError::Parse("term without exponent".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| TorusError::Parse(format!("bad exponent entry {x}"))))
                .collect::<Result<Exponent, _>>()?;
            let c = match t.get("coefficient") {
                Some(c) => QuantumScalar::from_json(c).map_err(TorusError::Parse)?,
                None => QuantumScalar::one(),
            };
            terms.push((exp, c));
        }
        Self::from_terms(form, terms)
    }
}

fn coord_range(terms: &BTreeMap<Exponent, QuantumScalar>, c: usize) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for a in terms.keys() {
        lo = lo.min(a[c]);
        hi = hi.max(a[c]);
    }
    (lo, hi)
}

fn write_exponent(f: &mut fmt::Formatter<'_>, a: &[i64]) -> fmt::Result {
    write!(f, "X^(")?;
    for (i, x) in a.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            write_exponent(f, a)?;
        }
        Ok(())
    }
}

/// Commutative Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::default();
        for (a, c) in terms {
            out.add_term(a, c.into());
        }
        out
    }

    fn add_term(&mut self, a: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(a.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s: Exponent = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(s, x * y);
            }
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "x^(")?;
            for (j, x) in a.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(rows: &[&[i64]]) -> Arc<SkewForm> {
        Arc::new(SkewForm::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
    }

    fn gl2_form() -> Arc<SkewForm> {
        form(&[&[0, -2, -2, 2], &[2, 0, 0, 2], &[2, 0, 0, 4], &[-2, -2, -4, 0]])
    }

    #[test]
    fn generator_product_picks_up_pairing() {
        let f = form(&[&[0, -2], &[2, 0]]);
        let x1 = TorusElement::generator(f.clone(), 0);
        let x2 = TorusElement::generator(f.clone(), 1);
        let p = x1.multiply(&x2).unwrap();
        let expect = TorusElement::term(f, vec![1, 1], QuantumScalar::v_power(-2)).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn identity_is_neutral() {
        let f = gl2_form();
        let y = TorusElement::from_terms(
            f.clone(),
            vec![
                (vec![1, 0, -1, 0], QuantumScalar::one()),
                (vec![0, 1, -1, 1], QuantumScalar::v_power(3)),
            ],
        )
        .unwrap();
        let one = TorusElement::one(f);
        assert_eq!(one.multiply(&y).unwrap(), y);
        assert_eq!(y.multiply(&one).unwrap(), y);
    }

    #[test]
    fn gl2_form_commutation_of_first_and_third() {
        let f = gl2_form();
        let x1 = TorusElement::generator(f.clone(), 0);
        let x3 = TorusElement::generator(f, 2);
        let lhs = x1.multiply(&x3).unwrap();
        let rhs = x3.multiply(&x1).unwrap();
        // q^{-2} = v^{-4}
        assert_eq!(lhs, rhs.shift_v(-4));
        assert_eq!(lhs.detect_q_proportional(&rhs).unwrap(), Some(-4));
    }

    #[test]
    fn addition_cancels() {
        let f = form(&[&[0, 1], &[-1, 0]]);
        let x1 = TorusElement::generator(f.clone(), 0);
        let x2 = TorusElement::generator(f.clone(), 1);
        assert!(x1.add(&x1.neg()).unwrap().is_zero());
        assert_eq!(x1.add(&x2).unwrap().len(), 2);
        let one = TorusElement::one(f);
        let a = one.scale(&QuantumScalar::from_terms([(0, 1), (1, 1)]));
        let b = one.scale(&QuantumScalar::from_terms([(0, 1), (1, -1)]));
        assert_eq!(a.add(&b).unwrap(), one.scale(&QuantumScalar::from_int(2)));
    }

    #[test]
    fn bar_fixes_monomials() {
        let f = gl2_form();
        let m = TorusElement::monomial(f.clone(), vec![1, -2, 3, 1]).unwrap();
        assert_eq!(m.bar(), m);
        let one = TorusElement::one(f);
        assert_eq!(one.shift_v(1).bar(), one.shift_v(-1));
    }

    #[test]
    fn form_mismatch_is_reported() {
        let a = TorusElement::one(form(&[&[0, 1], &[-1, 0]]));
        let b = TorusElement::one(form(&[&[0, 2], &[-2, 0]]));
        assert!(matches!(a.multiply(&b), Err(TorusError::FormMismatch { .. })));
        assert!(matches!(a.add(&b), Err(TorusError::FormMismatch { .. })));
    }

    #[test]
    fn rank_limit() {
        assert_eq!(SkewForm::zero(65), Err(TorusError::RankTooLarge(65)));
        assert!(SkewForm::zero(64).is_ok());
    }

    #[test]
    fn non_proportional_detected() {
        let f = form(&[&[0, -2], &[2, 0]]);
        let x1 = TorusElement::generator(f.clone(), 0);
        let x2 = TorusElement::generator(f, 1);
        let s = x1.add(&x2).unwrap();
        assert_eq!(s.detect_q_proportional(&x1).unwrap(), None);
        assert_eq!(s.detect_q_proportional(&s).unwrap(), Some(0));
        let ab = x1.multiply(&x2).unwrap();
        let ba = x2.multiply(&x1).unwrap();
        assert_eq!(ab.detect_q_proportional(&ba).unwrap(), Some(-4));
    }

    #[test]
    fn right_division_recovers_factor() {
        let f = gl2_form();
        let q = TorusElement::from_terms(
            f.clone(),
            vec![
                (vec![1, 0, -1, 0], QuantumScalar::one()),
                (vec![0, 1, -1, 1], QuantumScalar::from_terms([(2, 1), (-2, 1)])),
            ],
        )
        .unwrap();
        let d = TorusElement::generator(f.clone(), 2)
            .add(&TorusElement::generator(f.clone(), 3).shift_v(1))
            .unwrap();
        let p = q.multiply(&d).unwrap();
        assert_eq!(p.right_divide(&d).unwrap(), q);
        let not = TorusElement::one(f.clone()).add(&TorusElement::generator(f, 0)).unwrap();
        assert_eq!(not.right_divide(&d), Err(TorusError::NotDivisible));
    }

    #[test]
    fn specialization_forgets_v() {
        let f = form(&[&[0, 1], &[-1, 0]]);
        let x = TorusElement::from_terms(
            f,
            vec![(vec![1, 0], QuantumScalar::one()), (vec![0, 1], QuantumScalar::v_power(1))],
        )
        .unwrap();
        let c = x.specialize_classical();
        assert_eq!(c, LaurentPolynomial::from_terms([(vec![1, 0], 1), (vec![0, 1], 1)]));
        let m = TorusElement::term(x.form().clone(), vec![2, -1], QuantumScalar::v_power(3)).unwrap();
        assert_eq!(m.specialize_classical(), LaurentPolynomial::from_terms([(vec![2, -1], 1)]));
    }

    #[test]
    fn monomial_inverse_and_powers() {
        let f = gl2_form();
        let x = TorusElement::term(f.clone(), vec![0, 0, 0, 1], QuantumScalar::v_power(2)).unwrap();
        let inv = x.inverse_monomial().unwrap();
        assert_eq!(x.multiply(&inv).unwrap(), TorusElement::one(f.clone()));
        assert_eq!(x.pow(-2).unwrap().multiply(&x.pow(2).unwrap()).unwrap(), TorusElement::one(f));
    }

    #[test]
    fn json_roundtrip() {
        let f = gl2_form();
        let x = TorusElement::from_terms(
            f.clone(),
            vec![
                (vec![1, 0, -1, 0], QuantumScalar::from_terms([(-1, 2), (1, -1)])),
                (vec![0, 1, -1, 1], QuantumScalar::one()),
            ],
        )
        .unwrap();
        assert_eq!(TorusElement::from_json(f, &x.to_json()).unwrap(), x);
        assert_eq!(x.to_string(), "X^(0,1,-1,1) + (2v^-1 - v)X^(1,0,-1,0)");
    }
}
