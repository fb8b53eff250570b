use std::sync::Arc;

use proptest::prelude::*;

use qcluster::{QuantumScalar, SkewForm, TorusElement};

mod common;
use common::{commutation_holds, is_skew, point, seed_and_path, shadow_agrees};

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

fn form_strategy(max_rank: usize) -> impl Strategy<Value = Arc<SkewForm>> {
    (1..=max_rank).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let x = it.next().unwrap();
                    rows[i][j] = x;
                    rows[j][i] = -x;
                }
            }
            Arc::new(SkewForm::new(&rows).unwrap())
        })
    })
}

fn scalar() -> impl Strategy<Value = QuantumScalar> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..=3).prop_map(QuantumScalar::from_terms)
}

fn element(form: Arc<SkewForm>, max_terms: usize) -> impl Strategy<Value = TorusElement> {
    let n = form.rank();
    prop::collection::vec((prop::collection::vec(-2i64..=2, n), scalar()), 1..=max_terms)
        .prop_map(move |ts| TorusElement::from_terms(form.clone(), ts).unwrap())
}

fn triple() -> impl Strategy<Value = (TorusElement, TorusElement, TorusElement)> {
    form_strategy(3).prop_flat_map(|f| (element(f.clone(), 5), element(f.clone(), 5), element(f, 5)))
}

fn pair() -> impl Strategy<Value = (TorusElement, TorusElement)> {
    form_strategy(3).prop_flat_map(|f| (element(f.clone(), 5), element(f, 5)))
}

fn monomial_pair() -> impl Strategy<Value = (Arc<SkewForm>, Vec<i64>, Vec<i64>)> {
    form_strategy(4).prop_flat_map(|f| {
        let n = f.rank();
        (Just(f), prop::collection::vec(-3i64..=3, n), prop::collection::vec(-3i64..=3, n))
    })
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn associativity((x, y, z) in triple()) {
        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn commutation_law(f in form_strategy(4)) {
        let n = f.rank();
        for i in 0..n {
            for j in 0..n {
                let xi = TorusElement::generator(f.clone(), i);
                let xj = TorusElement::generator(f.clone(), j);
                let l = xi.multiply(&xj).unwrap();
                let r = xj.multiply(&xi).unwrap().shift_v(2 * f.get(i, j));
                prop_assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn bar_reverses_monomial_products((f, a, b) in monomial_pair()) {
        let xa = TorusElement::monomial(f.clone(), a).unwrap();
        let xb = TorusElement::monomial(f, b).unwrap();
        prop_assert_eq!(xa.multiply(&xb).unwrap().bar(), xb.bar().multiply(&xa.bar()).unwrap());
    }

    #[test]
    fn bar_is_an_involutive_anti_automorphism((x, y) in pair()) {
        prop_assert_eq!(x.multiply(&y).unwrap().bar(), y.bar().multiply(&x.bar()).unwrap());
        prop_assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn specialization_is_a_ring_map((x, y) in pair()) {
        prop_assert_eq!(
            x.multiply(&y).unwrap().specialize_classical(),
            x.specialize_classical().multiply(&y.specialize_classical())
        );
        prop_assert_eq!(
            x.add(&y).unwrap().specialize_classical(),
            x.specialize_classical().add(&y.specialize_classical())
        );
    }

    #[test]
    fn q_proportional_detection((x, _) in pair(), m in -6i64..=6) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x.detect_q_proportional(&x.shift_v(m)).unwrap(), Some(-m));
        prop_assert_eq!(x.shift_v(m).detect_q_proportional(&x).unwrap(), Some(m));
        let doubled = x.add(&x.shift_v(1)).unwrap();
        prop_assert_eq!(doubled.detect_q_proportional(&x).unwrap(), None);
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn mutation_is_an_involution((s, path) in seed_and_path(), k in 0usize..3) {
        let t = s.mutate_sequence(&path).unwrap();
        let k = k % t.mutable_count();
        prop_assert_eq!(t.mutate(k).unwrap().mutate(k).unwrap(), t);
    }

    #[test]
    fn compatibility_is_conserved((s, path) in seed_and_path()) {
        let d = s.check_compatibility().d;
        prop_assert!(d.is_some());
        let mut t = s;
        for &k in &path {
            t = t.mutate(k).unwrap();
            let c = t.check_compatibility();
            prop_assert!(c.ok);
            prop_assert_eq!(c.d, d);
            prop_assert!(is_skew(&t.form().rows(), t.rank()));
            prop_assert!(is_skew(&t.exchange().rows(), t.mutable_count()));
            prop_assert!(commutation_holds(&t));
        }
    }

    #[test]
    fn sign_choice_is_irrelevant((s, path) in seed_and_path()) {
        let t = s.mutate_sequence(&path).unwrap();
        for k in 0..t.mutable_count() {
            prop_assert_eq!(t.mutated_form(k, 1), t.mutated_form(k, -1));
            prop_assert_eq!(t.mutate_with_eps(k, 1).unwrap(), t.mutate_with_eps(k, -1).unwrap());
        }
    }

    #[test]
    fn classical_shadow_matches_commutative_mutation(
        (s, path) in seed_and_path(),
        pts in prop::collection::vec(1i64..=7, 8),
    ) {
        prop_assert!(shadow_agrees(&s, &path, &point(s.rank(), &pts)));
    }
}
