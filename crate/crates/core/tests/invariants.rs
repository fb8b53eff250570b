use proptest::prelude::*;

use qcluster::charcalc::{character, GeneratorFamily, GradedGenerator, Window};
use qcluster::coulomb::checks::commutation_exponent;
use qcluster::coulomb::relations::{suite_instances, RelationKind};
use qcluster::coulomb::{build_registry, initial_seed_gl2, leclerc_shadow, SimpleLabel, Suite};
use qcluster::pairs::{canonicalize, label_pair};
use qcluster::{canonical_form, explore, ExchangeMatrix, QuantumSeed, SkewForm};

#[test]
fn edges_are_reversible_and_compatible() {
    let root = initial_seed_gl2();
    let d = root.check_compatibility().d;
    let g = explore(&root, 4).unwrap();
    for s in g.nodes.values() {
        assert_eq!(s.check_compatibility().d, d);
    }
    for (u, k, w) in &g.edges {
        let forward = g.nodes[u].mutate(*k).unwrap();
        assert_eq!(&canonical_form(&forward), w);
        let rep = &g.nodes[w];
        let back = (0..rep.mutable_count()).any(|j| &canonical_form(&rep.mutate(j).unwrap()) == u);
        assert!(back, "edge {k} has no reverse");
    }
}

#[test]
fn pentagon_closes() {
    let s = QuantumSeed::initial(
        SkewForm::new(&[vec![0, 1], vec![-1, 0]]).unwrap(),
        ExchangeMatrix::new(&[vec![0, 1], vec![-1, 0]]).unwrap(),
        vec!["x1".into(), "x2".into()],
    )
    .unwrap();
    for depth in 5..=8 {
        assert_eq!(explore(&s, depth).unwrap().node_count(), 5);
    }
}

#[test]
fn exploration_is_deterministic() {
    let a = explore(&initial_seed_gl2(), 4).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| explore(&initial_seed_gl2(), 4).unwrap());
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn q_commutation_closure() {
    let reg = build_registry(5, 3).unwrap();
    let mut checked = 0;
    for r in suite_instances(Suite::Commute, 2) {
        assert_eq!(r.kind, RelationKind::Commutation);
        let [a, b] = r.lhs.factors[..] else { panic!("two factors") };
        let (Some(x), Some(y)) = (reg.class(a.0), reg.class(b.0)) else { continue };
        let want = reg.sigma() * r.rhs[0].loop_shift + r.rhs[0].v_shift;
        assert_eq!(commutation_exponent(&x, &y).unwrap(), Some(want), "{r}");
        checked += 1;
    }
    assert!(checked >= 25);
}

#[test]
fn registry_classes_are_positive() {
    let reg = build_registry(5, 3).unwrap();
    for l in reg.labels() {
        if *l == SimpleLabel::Unit {
            continue;
        }
        assert!(reg.class(*l).unwrap().is_positive(), "{l}");
    }
}

#[test]
fn leclerc_shadow_to_depth_six() {
    let reg = build_registry(6, 3).unwrap();
    assert_eq!(leclerc_shadow(&reg).unwrap(), vec![]);
}

#[test]
fn labels_embed_injectively() {
    let reg = build_registry(5, 3).unwrap();
    let mut seen = std::collections::BTreeMap::new();
    for l in reg.labels() {
        let pair = match *l {
            SimpleLabel::P { k, l } => label_pair(2, Some(k), l).unwrap(),
            SimpleLabel::Pdet => label_pair(2, None, 0).unwrap(),
            _ => continue,
        };
        assert!(pair.is_dominant());
        if let Some(prev) = seen.insert(pair.clone(), *l) {
            panic!("{prev} and {l} share {pair}");
        }
    }
}

fn generators() -> impl Strategy<Value = Vec<GeneratorFamily>> {
    prop::collection::vec((-3i64..=3, -3i64..=-1, prop::bool::ANY), 0..=4).prop_map(|gs| {
        gs.into_iter()
            .map(|(w, e, ext)| GeneratorFamily::Single(GradedGenerator::new(w, e, if ext { -1 } else { 0 }).unwrap()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn characters_are_multiplicative(a in generators(), b in generators(), n in 2i64..=6) {
        let w = Window::symmetric(n).unwrap();
        let mut ab = a.clone();
        ab.extend(b.iter().copied());
        let prod = character(&a, w).unwrap().multiply(&character(&b, w).unwrap()).unwrap();
        prop_assert!(character(&ab, w).unwrap().equals_on_window(&prod).unwrap());
    }

    #[test]
    fn window_stability(a in generators(), n in 1i64..=5, extra in 1i64..=4) {
        let small = Window::symmetric(n).unwrap();
        let big = Window::symmetric(n + extra).unwrap();
        let c = character(&a, big).unwrap();
        let d = character(&a, small).unwrap();
        for (p, u, x) in d.window_terms() {
            prop_assert_eq!(c.coeff(p, u), x);
        }
        for (p, u, x) in c.window_terms() {
            if (small.p_lo..=small.p_hi).contains(&p) && (small.u_lo..=small.u_hi).contains(&u) {
                prop_assert_eq!(d.coeff(p, u), x);
            }
        }
    }

    #[test]
    fn canonicalize_is_an_orbit_invariant(
        (cols, shuffled) in prop::collection::vec((-3i64..=3, -3i64..=3), 1..=5)
            .prop_flat_map(|c| (Just(c.clone()), Just(c).prop_shuffle())),
    ) {
        let (l, m): (Vec<i64>, Vec<i64>) = cols.into_iter().unzip();
        let c = canonicalize(&l, &m).unwrap();
        prop_assert!(c.is_dominant());
        prop_assert_eq!(&canonicalize(&c.lambda, &c.mu).unwrap(), &c);
        let (l2, m2): (Vec<i64>, Vec<i64>) = shuffled.into_iter().unzip();
        prop_assert_eq!(canonicalize(&l2, &m2).unwrap(), c);
    }
}
