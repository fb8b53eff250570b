//! Random compatible seeds and an independent commutative mutation oracle.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qcluster::coulomb::initial_seed_gl2;
use qcluster::{ExchangeMatrix, LaurentPolynomial, QuantumSeed, SkewForm};

/// Seed with principal coefficients: `B~ = [B; I]` and `L = [[0, -I], [I, -B]]`,
/// so `B~^T L = (I | 0)` for any skew-symmetric `B`.
pub fn principal_seed(b: &[Vec<i64>]) -> QuantumSeed {
    let m = b.len();
    let mut rows = b.to_vec();
    for i in 0..m {
        rows.push((0..m).map(|j| i64::from(i == j)).collect());
    }
    let mut l = vec![vec![0; 2 * m]; 2 * m];
    for i in 0..m {
        l[i][m + i] = -1;
        l[m + i][i] = 1;
        for j in 0..m {
            l[m + i][m + j] = -b[i][j];
        }
    }
    let labels = (0..2 * m).map(|i| format!("x{i}")).collect();
    QuantumSeed::initial(
        SkewForm::new(&l).unwrap(),
        ExchangeMatrix::with_mutable(&rows, m).unwrap(),
        labels,
    )
    .unwrap()
}

/// Rank 2 with entries up to 2 (finite or affine), rank 3 with entries up to 1
/// (finite type); wild quivers grow too fast for exact expansion.
pub fn skew_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3).prop_flat_map(|m| {
        let bound: i64 = if m == 2 { 2 } else { 1 };
        prop::collection::vec(-bound..=bound, m * (m - 1) / 2).prop_map(move |upper| {
            let mut b = vec![vec![0; m]; m];
            let mut it = upper.into_iter();
            for i in 0..m {
                for j in i + 1..m {
                    let x = it.next().unwrap();
                    b[i][j] = x;
                    b[j][i] = -x;
                }
            }
            b
        })
    })
}

pub fn seed_and_path() -> impl Strategy<Value = (QuantumSeed, Vec<usize>)> {
    prop_oneof![
        skew_matrix().prop_map(|b| principal_seed(&b)),
        Just(initial_seed_gl2()),
    ]
    .prop_flat_map(|s| {
        let m = s.mutable_count();
        (Just(s), prop::collection::vec(0..m, 0..=4))
    })
}

pub fn is_skew(rows: &[Vec<i64>], m: usize) -> bool {
    (0..m).all(|i| (0..m).all(|j| rows[i][j] == -rows[j][i]))
}

pub fn commutation_holds(s: &QuantumSeed) -> bool {
    s.check_commutation().unwrap()
}

/// Exact value of a Laurent polynomial at a rational point.
pub fn eval(p: &LaurentPolynomial, x: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (a, c) in p.terms() {
        let mut t = BigRational::from_integer(c.clone());
        for (xi, &ai) in x.iter().zip(a) {
            t *= pow(xi, ai);
        }
        acc += t;
    }
    acc
}

pub fn pow(x: &BigRational, k: i64) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        r *= x;
    }
    if k < 0 {
        r.recip()
    } else {
        r
    }
}

/// Commutative mutation on values: `x_k x_k' = prod x_i^[b_ik]+ + prod x_i^[-b_ik]+`.
pub fn classical_path(s: &QuantumSeed, path: &[usize], x0: &[BigRational]) -> Vec<BigRational> {
    let mut x = x0.to_vec();
    let mut b = s.exchange().clone();
    for &k in path {
        let mut plus = BigRational::one();
        let mut minus = BigRational::one();
        for i in 0..b.rank() {
            let e = b.get(i, k);
            if e > 0 {
                plus *= pow(&x[i], e);
            } else if e < 0 {
                minus *= pow(&x[i], -e);
            }
        }
        x[k] = (plus + minus) / &x[k];
        b = b.mutate(k);
    }
    x
}

/// A rational evaluation point with distinct, non-unit coordinates.
pub fn point(rank: usize, pts: &[i64]) -> Vec<BigRational> {
    (0..rank)
        .map(|i| BigRational::new(BigInt::from(pts[i % pts.len()] + i as i64), BigInt::from(1 + (i as i64 % 3))))
        .collect()
}

/// Specializations of the quantum path agree with the oracle at `x0`.
pub fn shadow_agrees(s: &QuantumSeed, path: &[usize], x0: &[BigRational]) -> bool {
    let want = classical_path(s, path, x0);
    let t = s.mutate_sequence(path).unwrap();
    t.variables().iter().zip(&want).all(|(v, w)| &eval(&v.specialize_classical(), x0) == w)
}
