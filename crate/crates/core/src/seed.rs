//! Quantum seeds: compatible pairs `(L, B)`, mutation, and canonical forms.
//!
//! Indices are 0-based here; mutable vertices occupy `0..m`.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{SeedError, TorusError};
use crate::intlin;
use crate::qtorus::{SkewForm, TorusElement};

/// `n x m` exchange matrix; rows are all vertices, columns the mutable ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    rows: usize,
    mutable: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self, SeedError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if m > n {
            return Err(SeedError::Shape(format!("{m} mutable columns but only {n} rows")));
        }
        let mut entries = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(SeedError::Shape("ragged exchange matrix".into()));
            }
            entries.extend_from_slice(row);
        }
        let b = Self {
            rows: n,
            mutable: m,
            entries,
        };
        for i in 0..m {
            for j in i..m {
                if b.get(i, j) != -b.get(j, i) {
                    return Err(SeedError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(b)
    }

    /// Like [`ExchangeMatrix::new`] with an explicit column count, so empty rows are allowed.
    pub fn with_mutable(rows: &[Vec<i64>], mutable: usize) -> Result<Self, SeedError> {
        if mutable == 0 {
            if rows.iter().any(|r| !r.is_empty()) {
                return Err(SeedError::Shape("expected zero columns".into()));
            }
            return Ok(Self {
                rows: rows.len(),
                mutable: 0,
                entries: Vec::new(),
            });
        }
        let b = Self::new(rows)?;
        if b.mutable != mutable {
            return Err(SeedError::Shape(format!("expected {mutable} columns, found {}", b.mutable)));
        }
        Ok(b)
    }

    pub fn rank(&self) -> usize {
        self.rows
    }

    pub fn mutable_count(&self) -> usize {
        self.mutable
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.mutable + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.mutable).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.mutable {
                let b = self.get(i, j);
                out.entries[i * self.mutable + j] = if i == k || j == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    b + bik.signum() * (bik * self.get(k, j)).max(0)
                };
            }
        }
        out
    }

    /// Sources of the quiver on mutable vertices: no arrow `j -> i` with `b_ji > 0`.
    pub fn is_source(&self, i: usize) -> bool {
        (0..self.mutable).all(|j| self.get(j, i) <= 0)
    }
}

/// Result of checking `B^T L = (d I | 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub ok: bool,
    pub d: Option<i64>,
    /// `B^T L`, an `m x n` matrix.
    pub product: Vec<Vec<i64>>,
}

pub fn compatibility(form: &SkewForm, b: &ExchangeMatrix) -> CompatibilityReport {
    let n = b.rank();
    let m = b.mutable_count();
    let product: Vec<Vec<i64>> = (0..m)
        .map(|k| (0..n).map(|j| (0..n).map(|i| b.get(i, k) * form.get(i, j)).sum()).collect())
        .collect();
    if m == 0 {
        return CompatibilityReport {
            ok: true,
            d: None,
            product,
        };
    }
    let d = product[0][0];
    let ok = d != 0
        && product
            .iter()
            .enumerate()
            .all(|(k, row)| row.iter().enumerate().all(|(j, &x)| x == if j == k { d } else { 0 }));
    CompatibilityReport {
        ok,
        d: ok.then_some(d),
        product,
    }
}

/// A quantum seed with variables expressed in a fixed ambient torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumSeed {
    form: Arc<SkewForm>,
    exchange: ExchangeMatrix,
    labels: Vec<String>,
    variables: Vec<TorusElement>,
}

impl QuantumSeed {
    /// Initial seed with variables `X^(e_i)` over the torus of `form`.
    pub fn initial(form: SkewForm, exchange: ExchangeMatrix, labels: Vec<String>) -> Result<Self, SeedError> {
        Self::new(form, exchange, labels, None)
    }

    pub fn new(
        form: SkewForm,
        exchange: ExchangeMatrix,
        labels: Vec<String>,
        variables: Option<Vec<TorusElement>>,
    ) -> Result<Self, SeedError> {
        let n = form.rank();
        if exchange.rank() != n {
            return Err(SeedError::Shape(format!(
                "exchange matrix has {} rows, form has rank {n}",
                exchange.rank()
            )));
        }
        if labels.len() != n {
            return Err(SeedError::Shape(format!("{} labels for rank {n}", labels.len())));
        }
        let form = Arc::new(form);
        let variables = match variables {
            Some(vs) => {
                if vs.len() != n {
                    return Err(SeedError::Shape(format!("{} variables for rank {n}", vs.len())));
                }
                let amb = vs.first().map(|v| v.form().clone());
                if let Some(amb) = amb {
                    if vs.iter().any(|v| v.form() != &amb) {
                        return Err(TorusError::FormMismatch {
                            left: amb.rank(),
                            right: n,
                        }
                        .into());
                    }
                }
                vs
            }
            None => (0..n).map(|i| TorusElement::generator(form.clone(), i)).collect(),
        };
        Ok(Self {
            form,
            exchange,
            labels,
            variables,
        })
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn exchange(&self) -> &ExchangeMatrix {
        &self.exchange
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn variables(&self) -> &[TorusElement] {
        &self.variables
    }

    pub fn ambient_form(&self) -> &Arc<SkewForm> {
        self.variables[0].form()
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn mutable_count(&self) -> usize {
        self.exchange.mutable_count()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SeedError> {
        if labels.len() != self.rank() {
            return Err(SeedError::Shape(format!("{} labels for rank {}", labels.len(), self.rank())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn check_compatibility(&self) -> CompatibilityReport {
        compatibility(&self.form, &self.exchange)
    }

    /// Checks `Y_i Y_j = v^{2 L_ij} Y_j Y_i` for every pair of seed variables.
    pub fn check_commutation(&self) -> Result<bool, TorusError> {
        let n = self.rank();
        for i in 0..n {
            for j in i + 1..n {
                let ab = self.variables[i].multiply(&self.variables[j])?;
                let ba = self.variables[j].multiply(&self.variables[i])?;
                if ab != ba.shift_v(2 * self.form.get(i, j)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_index(&self, k: usize) -> Result<(), SeedError> {
        let m = self.mutable_count();
        if k >= self.rank() {
            return Err(SeedError::IndexOutOfRange { index: k, mutable: m });
        }
        if k >= m {
            return Err(SeedError::Frozen(k));
        }
        Ok(())
    }

    /// `X^(-e_k + [b_k]_+) + X^(-e_k + [-b_k]_+)` in the seed's own toric frame.
    pub fn exchange_binomial(&self, k: usize) -> Result<TorusElement, SeedError> {
        self.check_index(k)?;
        let (p, r) = self.exchange_exponents(k);
        let n = self.rank();
        let shifted = |v: &[i64]| -> Vec<i64> {
            (0..n).map(|i| v[i] - i64::from(i == k)).collect()
        };
        let a = TorusElement::monomial(self.form.clone(), shifted(&p))?;
        let b = TorusElement::monomial(self.form.clone(), shifted(&r))?;
        Ok(a.add(&b)?)
    }

    fn exchange_exponents(&self, k: usize) -> (Vec<i64>, Vec<i64>) {
        let n = self.rank();
        let p = (0..n).map(|i| self.exchange.get(i, k).max(0)).collect();
        let r = (0..n).map(|i| (-self.exchange.get(i, k)).max(0)).collect();
        (p, r)
    }

    /// The bar-normalized frame monomial `v^{-sum_{i<j} a_i a_j L_ij} Y_1^{a_1}...Y_n^{a_n}`.
    pub fn frame_monomial(&self, a: &[i64]) -> Result<TorusElement, SeedError> {
        let m = self.mutable_count();
        let mut acc = TorusElement::one(self.ambient_form().clone());
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            if ai < 0 && i < m {
                return Err(SeedError::NegativeMutableExponent(i));
            }
            let f = self.variables[i]
                .pow(ai)
                .map_err(|_| SeedError::FrozenNotInvertible(i))?;
            acc = acc.multiply(&f)?;
        }
        Ok(acc.shift_v(self.form.normalization(a)))
    }

    /// The form after mutation at `k` with sign choice `eps`.
    pub fn mutated_form(&self, k: usize, eps: i64) -> SkewForm {
        let n = self.rank();
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        e[k * n + k] = -1;
        for i in 0..n {
            if i != k {
                e[i * n + k] = (-eps * self.exchange.get(i, k)).max(0);
            }
        }
        self.form.congruence(&e)
    }

    /// Seed mutation at the mutable index `k`, asserting sign-independence of the new form.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        self.mutate_with_eps(k, 1).and_then(|s| {
            if *s.form == self.mutated_form(k, -1) {
                Ok(s)
            } else {
                Err(SeedError::SignDependent)
            }
        })
    }

    pub fn mutate_with_eps(&self, k: usize, eps: i64) -> Result<Self, SeedError> {
        self.check_index(k)?;
        // an isolated vertex exchanges as Y' Y = 2 whatever the form
        let isolated = (0..self.rank()).all(|i| self.exchange.get(i, k) == 0);
        if !isolated && !self.check_compatibility().ok {
            return Err(SeedError::Incompatible);
        }
        let (p, r) = self.exchange_exponents(k);
        let n = self.rank();
        let ek: Vec<i64> = (0..n).map(|i| i64::from(i == k)).collect();
        let plus = self.frame_monomial(&p)?.shift_v(self.form.pairing(&p, &ek));
        let minus = self.frame_monomial(&r)?.shift_v(self.form.pairing(&r, &ek));
        let rhs = plus.add(&minus)?;
        let new_var = rhs.right_divide(&self.variables[k])?;
        let mut variables = self.variables.clone();
        variables[k] = new_var;
        let mut labels = self.labels.clone();
        labels[k] = toggle_prime(&labels[k]);
        Ok(Self {
            form: Arc::new(self.mutated_form(k, eps)),
            exchange: self.exchange.mutate(k),
            labels,
            variables,
        })
    }

    /// Applies a sequence of mutations left to right.
    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Self, SeedError> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Simultaneous relabelling of mutable vertices: new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.rank();
        let m = self.mutable_count();
        let full: Vec<usize> = perm.iter().copied().chain(m..n).collect();
        let mut b = vec![0i64; n * m];
        for i in 0..n {
            for j in 0..m {
                b[i * m + j] = self.exchange.get(full[i], full[j]);
            }
        }
        let mut l = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                l[i * n + j] = self.form.get(full[i], full[j]);
            }
        }
        Self {
            form: Arc::new(SkewForm::from_flat(n, l).expect("permutation preserves skew-symmetry")),
            exchange: ExchangeMatrix {
                rows: n,
                mutable: m,
                entries: b,
            },
            labels: full.iter().map(|&i| self.labels[i].clone()).collect(),
            variables: full.iter().map(|&i| self.variables[i].clone()).collect(),
        }
    }

    pub fn to_file(&self) -> SeedFile {
        let same_ambient = **self.ambient_form() == *self.form;
        let initial = !self.variables.is_empty()
            && same_ambient
            && self
                .variables
                .iter()
                .enumerate()
                .all(|(i, v)| *v == TorusElement::generator(self.form.clone(), i));
        SeedFile {
            rank: self.rank(),
            mutable: self.mutable_count(),
            lambda: self.form.rows(),
            b: self.exchange.rows(),
            labels: self.labels.clone(),
            ambient: (!same_ambient).then(|| self.ambient_form().rows()),
            vars: (!initial).then(|| self.variables.iter().map(TorusElement::to_json).collect()),
        }
    }

    pub fn from_file(file: &SeedFile) -> Result<Self, SeedError> {
        let n = file.rank;
        if file.lambda.len() != n || file.b.len() != n || file.labels.len() != n {
            return Err(SeedError::Format(format!("rank {n} does not match array sizes")));
        }
        let form = SkewForm::new(&file.lambda)?;
        let b = ExchangeMatrix::with_mutable(&file.b, file.mutable)?;
        let vars = match &file.vars {
            None => None,
            Some(vs) => {
                let amb = match &file.ambient {
                    Some(rows) => Arc::new(SkewForm::new(rows)?),
                    None => Arc::new(form.clone()),
                };
                if amb.rank() != n {
                    return Err(SeedError::Format("ambient rank mismatch".into()));
                }
                Some(
                    vs.iter()
                        .map(|v| TorusElement::from_json(amb.clone(), v))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
        };
        Self::new(form, b, file.labels.clone(), vars)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_file()).expect("seed files serialize")
    }

    pub fn from_json(v: &Value) -> Result<Self, SeedError> {
        let file: SeedFile = serde_json::from_value(v.clone()).map_err(|e| SeedError::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

fn toggle_prime(s: &str) -> String {
    match s.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{s}'"),
    }
}

/// On-disk seed description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    pub rank: usize,
    pub mutable: usize,
    pub lambda: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    /// Form of the torus the variables live in, when it differs from `lambda`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<Value>>,
}

/// Permutation-invariant identity of a seed (variables included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub String);

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type KeyParts = (Vec<i64>, Vec<i64>, Vec<String>);

fn key_parts(seed: &QuantumSeed, perm: &[usize], fps: &[String]) -> KeyParts {
    let n = seed.rank();
    let m = seed.mutable_count();
    let full: Vec<usize> = perm.iter().copied().chain(m..n).collect();
    let b = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| seed.exchange.get(full[i], full[j]))
        .collect();
    let l = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| seed.form.get(full[i], full[j]))
        .collect();
    let v = full.iter().map(|&i| fps[i].clone()).collect();
    (b, l, v)
}

/// Minimizes over all permutations of the mutable vertices and returns the key,
/// the permuted representative, and the permutation used.
pub fn canonicalize(seed: &QuantumSeed) -> (CanonicalKey, QuantumSeed, Vec<usize>) {
    let m = seed.mutable_count();
    let fps: Vec<String> = seed.variables.iter().map(TorusElement::fingerprint).collect();
    let (best_perm, parts) = (0..m)
        .permutations(m)
        .map(|p| {
            let parts = key_parts(seed, &p, &fps);
            (p, parts)
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("at least the identity permutation");
    let (b, l, v) = parts;
    let key = format!(
        "B{}|L{}|V{}",
        b.iter().join(","),
        l.iter().join(","),
        v.join(";")
    );
    (CanonicalKey(key), seed.permuted(&best_perm), best_perm)
}

pub fn canonical_form(seed: &QuantumSeed) -> CanonicalKey {
    canonicalize(seed).0
}

/// Vertex labels of the general-rank quiver in matrix order.
pub fn quiver_gln_labels(n: usize) -> Vec<String> {
    (1..n)
        .map(|k| format!("P_{{{k},1}}"))
        .chain((1..=n).map(|k| format!("P_{{{k},0}}")))
        .chain(std::iter::once("P_{0,det}".to_string()))
        .collect()
}

/// Exchange matrix of the `GL_n` quiver: vertices `P_{k,1}` (k < n), `P_{k,0}` (k <= n),
/// and the frozen `P_{0,det}`, with `b_ij = #(i -> j) - #(j -> i)`.
pub fn build_quiver_gln(n: usize) -> Result<ExchangeMatrix, SeedError> {
    if n < 2 {
        return Err(SeedError::QuiverRank(n));
    }
    let total = 2 * n;
    let top = |k: usize| k - 1; // P_{k,1}
    let bottom = |k: usize| n - 1 + k - 1; // P_{k,0}
    let det = total - 1;
    let mut full = vec![vec![0i64; total]; total];
    let mut arrow = |a: usize, b: usize, c: i64| {
        full[a][b] += c;
        full[b][a] -= c;
    };
    for k in 1..n {
        arrow(top(k), bottom(k), 2);
        arrow(bottom(k + 1), top(k), 1);
    }
    for k in 1..n - 1 {
        arrow(bottom(k), top(k + 1), 1);
    }
    arrow(bottom(n - 1), bottom(n), 1);
    arrow(bottom(n - 1), det, 1);
    arrow(det, bottom(n), 1);
    let rows: Vec<Vec<i64>> = full.into_iter().map(|r| r[..total - 1].to_vec()).collect();
    ExchangeMatrix::new(&rows)
}

/// Integer skew form with `B^T L = (d I | 0)`, if one exists.
///
/// Ties are broken by reducing into the Hermite box of the solution lattice.
pub fn complete_lambda(b: &ExchangeMatrix, d: i64) -> Result<Option<SkewForm>, SeedError> {
    let n = b.rank();
    let m = b.mutable_count();
    if (0..m).any(|k| (0..n).all(|i| b.get(i, k) == 0)) {
        return Ok(None);
    }
    let rk = intlin::rank(&b.rows());
    if rk < m {
        return Err(SeedError::RankDeficient { rank: rk, mutable: m });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let unknown = |i: usize, j: usize| -> Option<(usize, i64)> {
        if i == j {
            None
        } else if i < j {
            pairs.iter().position(|&p| p == (i, j)).map(|u| (u, 1))
        } else {
            pairs.iter().position(|&p| p == (j, i)).map(|u| (u, -1))
        }
    };
    let mut a = Vec::with_capacity(m * n);
    let mut rhs = Vec::with_capacity(m * n);
    for k in 0..m {
        for j in 0..n {
            let mut row = vec![0i64; pairs.len()];
            for i in 0..n {
                if let Some((u, s)) = unknown(i, j) {
                    row[u] += s * b.get(i, k);
                }
            }
            a.push(row);
            rhs.push(if j == k { d } else { 0 });
        }
    }
    let Some(sol) = intlin::solve_integer(&a, &rhs, pairs.len())? else {
        return Ok(None);
    };
    let basis = intlin::row_hermite(&sol.kernel)?;
    let x = intlin::reduce_mod_lattice(&sol.particular, &basis)?;
    let mut entries = vec![0i64; n * n];
    for (u, &(i, j)) in pairs.iter().enumerate() {
        entries[i * n + j] = x[u];
        entries[j * n + i] = -x[u];
    }
    Ok(Some(SkewForm::from_flat(n, entries)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QuantumScalar;

    fn gl2_seed() -> QuantumSeed {
        let l = SkewForm::new(&[
            vec![0, -2, -2, 2],
            vec![2, 0, 0, 2],
            vec![2, 0, 0, 4],
            vec![-2, -2, -4, 0],
        ])
        .unwrap();
        let b = ExchangeMatrix::new(&[vec![0, 2, -1], vec![-2, 0, 1], vec![1, -1, 0], vec![0, -1, 1]]).unwrap();
        QuantumSeed::initial(l, b, quiver_gln_labels(2)).unwrap()
    }

    fn a2() -> QuantumSeed {
        let l = SkewForm::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let b = ExchangeMatrix::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
        QuantumSeed::initial(l, b, vec!["x1".into(), "x2".into()]).unwrap()
    }

    #[test]
    fn compatibility_values() {
        assert_eq!(gl2_seed().check_compatibility().d, Some(-2));
        assert_eq!(a2().check_compatibility().d, Some(1));
        let zero = SkewForm::zero(2).unwrap();
        let b = ExchangeMatrix::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(!compatibility(&zero, &b).ok);
    }

    #[test]
    fn gl2_mutation_at_third_vertex() {
        let s = gl2_seed();
        let t = s.mutate(2).unwrap();
        let f = s.form().clone();
        let expect = TorusElement::monomial(f.clone(), vec![0, 1, -1, 1])
            .unwrap()
            .add(&TorusElement::monomial(f, vec![1, 0, -1, 0]).unwrap())
            .unwrap();
        assert_eq!(t.variables()[2], expect);
        assert_eq!(s.exchange_binomial(2).unwrap(), expect);
        assert_eq!(
            t.form().rows(),
            vec![vec![0, -2, 2, 2], vec![2, 0, 2, 2], vec![-2, -2, 0, -2], vec![-2, -2, 2, 0]]
        );
        assert_eq!(t.exchange().rows(), vec![vec![0, 1, 1], vec![-1, 0, -1], vec![-1, 1, 0], vec![1, -1, -1]]);
        assert_eq!(t.mutate(2).unwrap(), s);
    }

    #[test]
    fn a2_first_mutation() {
        let s = a2();
        let t = s.mutate(0).unwrap();
        let f = s.form().clone();
        let expect = TorusElement::from_terms(
            f,
            vec![(vec![-1, 1], QuantumScalar::one()), (vec![-1, 0], QuantumScalar::one())],
        )
        .unwrap();
        assert_eq!(t.variables()[0], expect);
        assert!(t.check_commutation().unwrap());
    }

    #[test]
    fn index_errors() {
        let s = gl2_seed();
        assert_eq!(s.mutate(3), Err(SeedError::Frozen(3)));
        assert!(matches!(s.mutate(9), Err(SeedError::IndexOutOfRange { .. })));
    }

    #[test]
    fn quiver_reproduces_rank_two_matrix() {
        assert_eq!(build_quiver_gln(2).unwrap(), gl2_seed().exchange().clone());
        assert_eq!(build_quiver_gln(1), Err(SeedError::QuiverRank(1)));
    }

    #[test]
    fn completion_is_compatible() {
        let b = gl2_seed().exchange().clone();
        let l = complete_lambda(&b, -2).unwrap().unwrap();
        assert_eq!(compatibility(&l, &b).d, Some(-2));
        let a = ExchangeMatrix::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(complete_lambda(&a, 1).unwrap().unwrap().rows(), vec![vec![0, 1], vec![-1, 0]]);
        let z = ExchangeMatrix::new(&[vec![0], vec![0]]).unwrap();
        assert_eq!(complete_lambda(&z, 1).unwrap(), None);
        let dup = ExchangeMatrix::new(&[vec![0, 0], vec![0, 0], vec![1, 1]]).unwrap();
        assert!(matches!(complete_lambda(&dup, 1), Err(SeedError::RankDeficient { .. })));
    }

    #[test]
    fn canonical_key_ignores_mutable_order() {
        let s = gl2_seed();
        let p = s.permuted(&[1, 0, 2]);
        assert_eq!(canonical_form(&s), canonical_form(&p));
        assert_eq!(canonical_form(&s.mutate(1).unwrap().mutate(1).unwrap()), canonical_form(&s));
    }

    #[test]
    fn file_roundtrip_keeps_variables() {
        let s = gl2_seed().mutate(2).unwrap().mutate(0).unwrap();
        let back = QuantumSeed::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let init = gl2_seed();
        assert!(init.to_file().vars.is_none());
    }
}
