//! Dominant pairs `(lambda, mu)` indexing simple objects for `GL_n`: orbits of
//! `Z^n x Z^n` under the diagonal action of the symmetric group.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::PairsError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantPair {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
}

impl DominantPair {
    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_dominant(&self) -> bool {
        (1..self.n()).all(|i| {
            let (a, b) = (self.lambda[i - 1], self.lambda[i]);
            a > b || (a == b && self.mu[i - 1] >= self.mu[i])
        })
    }

    pub fn to_json(&self) -> Value {
        json!({"lambda": self.lambda, "mu": self.mu})
    }
}

impl std::fmt::Display for DominantPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}; {})", self.lambda.iter().join(","), self.mu.iter().join(","))
    }
}

/// Sorts the pairs `(lambda_i, mu_i)` decreasingly.
pub fn canonicalize(lambda: &[i64], mu: &[i64]) -> Result<DominantPair, PairsError> {
    if lambda.len() != mu.len() {
        return Err(PairsError::LengthMismatch(lambda.len(), mu.len()));
    }
    let mut cols: Vec<(i64, i64)> = lambda.iter().copied().zip(mu.iter().copied()).collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    Ok(DominantPair {
        lambda: cols.iter().map(|c| c.0).collect(),
        mu: cols.iter().map(|c| c.1).collect(),
    })
}

fn check_box(lo: i64, hi: i64) -> Result<(), PairsError> {
    if lo > hi {
        Err(PairsError::EmptyBox { lo, hi })
    } else {
        Ok(())
    }
}

/// All dominant pairs with entries in `[lo, hi]`, sorted.
pub fn enumerate_box(n: usize, lo: i64, hi: i64) -> Result<Vec<DominantPair>, PairsError> {
    check_box(lo, hi)?;
    let cols: Vec<(i64, i64)> = (lo..=hi).cartesian_product(lo..=hi).collect();
    // a dominant pair is a weakly decreasing sequence of columns
    let mut out: Vec<DominantPair> = cols
        .iter()
        .rev()
        .copied()
        .combinations_with_replacement(n)
        .map(|c| DominantPair {
            lambda: c.iter().map(|x| x.0).collect(),
            mu: c.iter().map(|x| x.1).collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Counts orbits by partitioning the whole box, independently of [`canonicalize`].
pub fn orbit_count_bruteforce(n: usize, lo: i64, hi: i64) -> Result<u128, PairsError> {
    check_box(lo, hi)?;
    let side = (hi - lo + 1) as u128;
    let fact: u128 = (1..=n as u128).product();
    let size = side.checked_pow(2 * n as u32).and_then(|x| x.checked_mul(fact));
    match size {
        Some(s) if n <= 4 && s <= 100_000_000 => {}
        Some(s) => return Err(PairsError::SizeGuard(s)),
        None => return Err(PairsError::SizeGuard(u128::MAX)),
    }
    if n == 0 {
        return Ok(1);
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let points: Vec<Vec<i64>> = (0..2 * n).map(|_| lo..=hi).multi_cartesian_product().collect();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut orbits = 0u128;
    for x in points {
        if seen.contains(&x) {
            continue;
        }
        orbits += 1;
        for p in &perms {
            let y: Vec<i64> = p.iter().map(|&i| x[i]).chain(p.iter().map(|&i| x[n + i])).collect();
            seen.insert(y);
        }
    }
    Ok(orbits)
}

/// Label `P_{k,l}` of the `GL_n` quiver as a pair: `lambda = omega_k` padded with
/// zeros (or `-omega` of the last `|k|` coordinates for `k < 0`), `mu = l lambda`
/// in absolute value on the same coordinates. `None` stands for `P_{0,det}`.
pub fn label_pair(n: usize, k: Option<i64>, l: i64) -> Result<DominantPair, PairsError> {
    let mut lambda = vec![0i64; n];
    let mut mu = vec![0i64; n];
    match k {
        None => mu.iter_mut().for_each(|x| *x = 1),
        Some(k) if k > 0 => {
            for i in 0..(k as usize).min(n) {
                lambda[i] = 1;
                mu[i] = l;
            }
        }
        Some(k) if k < 0 => {
            let k = (-k as usize).min(n);
            for i in n - k..n {
                lambda[i] = -1;
                mu[i] = l;
            }
        }
        Some(_) => {}
    }
    canonicalize(&lambda, &mu)
}
