//! Laurent polynomials in `v` with integer coefficients, `v = q^{1/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// Exact element of `Z[v, v^-1]`, stored sparsely by v-exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumScalar {
    coeffs: BTreeMap<i64, BigInt>,
}

impl QuantumScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c * v^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    pub fn v_power(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// Builds a scalar from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero();
        for (e, c) in terms {
            s.add_term(e, c.into());
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub(crate) fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Multiplies by `v^m`.
    pub fn shift(&self, m: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + m, c.clone())).collect(),
        }
    }

    /// `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Returns `(sign, e)` when the scalar is `±v^e`.
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    /// Exact quotient `self / d` in `Z[v^{±1}]`, if it exists.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // shift both to honest polynomials with nonzero constant term
        let a0 = self.min_exp()?;
        let b0 = d.min_exp()?;
        let num: Vec<BigInt> = dense(self, a0);
        let den: Vec<BigInt> = dense(d, b0);
        if num.len() < den.len() {
            return None;
        }
        let mut rem = num;
        let dlead = den.last()?.clone();
        let qlen = rem.len() - den.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &q * dj;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + a0 - b0, c)),
        ))
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Object(map) => {
                let mut s = Self::zero();
                for (k, c) in map {
                    let e: i64 = k.parse().map_err(|_| format!("bad v-exponent {k:?}"))?;
                    s.add_term(e, parse_bigint(c)?);
                }
                Ok(s)
            }
            Value::Number(_) | Value::String(_) => Ok(Self::from_int(parse_bigint(v)?)),
            other => Err(format!("expected scalar, got {other}")),
        }
    }
}

pub(crate) fn parse_bigint(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| format!("bad integer {n}")),
        Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

fn dense(s: &QuantumScalar, base: i64) -> Vec<BigInt> {
    let top = s.max_exp().unwrap_or(base);
    let mut out = vec![BigInt::zero(); (top - base + 1) as usize];
    for (e, c) in s.terms() {
        out[(e - base) as usize] = c.clone();
    }
    out
}

impl From<i64> for QuantumScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl AddAssign<&QuantumScalar> for QuantumScalar {
    fn add_assign(&mut self, rhs: &QuantumScalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add for &QuantumScalar {
    type Output = QuantumScalar;
    fn add(self, rhs: &QuantumScalar) -> QuantumScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QuantumScalar {
    type Output = QuantumScalar;
    fn add(mut self, rhs: QuantumScalar) -> QuantumScalar {
        self += &rhs;
        self
    }
}

impl Neg for &QuantumScalar {
    type Output = QuantumScalar;
    fn neg(self) -> QuantumScalar {
        QuantumScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for QuantumScalar {
    type Output = QuantumScalar;
    fn neg(self) -> QuantumScalar {
        -&self
    }
}

impl Sub for &QuantumScalar {
    type Output = QuantumScalar;
    fn sub(self, rhs: &QuantumScalar) -> QuantumScalar {
        self + &(-rhs)
    }
}

impl Sub for QuantumScalar {
    type Output = QuantumScalar;
    fn sub(self, rhs: QuantumScalar) -> QuantumScalar {
        &self - &rhs
    }
}

impl Mul for &QuantumScalar {
    type Output = QuantumScalar;
    fn mul(self, rhs: &QuantumScalar) -> QuantumScalar {
        let mut out = QuantumScalar::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for QuantumScalar {
    type Output = QuantumScalar;
    fn mul(self, rhs: QuantumScalar) -> QuantumScalar {
        &self * &rhs
    }
}

impl fmt::Display for QuantumScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}v")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}
