//! Property tests over randomized small inputs.

use proptest::prelude::*;

use operadics::coproduct::{idempotent_monoid, OperadCoproduct, Side};
use operadics::elem::Elem;
use operadics::graded::{circ_reassociate, distribute, dot_compose, GradedMap, GradedSet};

/// A random graded set with at most two elements per level.
fn graded_set(tag: &'static str, bound: u32) -> impl Strategy<Value = GradedSet> {
    proptest::collection::vec(0usize..=2, bound as usize + 1).prop_map(move |sizes| {
        GradedSet::new(
            sizes
                .iter()
                .enumerate()
                .map(|(n, &k)| {
                    (0..k)
                        .map(|i| Elem::atom(n as u32, format!("{tag}{n}_{i}")))
                        .collect()
                })
                .collect(),
        )
        .expect("distinct names")
    })
}

/// A chain word over the idempotent monoid coproduct, root first.
fn chain() -> impl Strategy<Value = Vec<(Side, &'static str)>> {
    proptest::collection::vec((any::<bool>(), any::<bool>()), 0..=5).prop_map(|letters| {
        letters
            .into_iter()
            .map(|(side, a)| {
                (
                    if side { Side::Left } else { Side::Right },
                    if a { "a" } else { "1" },
                )
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn distributive_law_round_trips(
        x in graded_set("x", 3),
        y in graded_set("y", 3),
        z in graded_set("z", 3),
    ) {
        let (forward, backward) = distribute(&x, &y, &z, 3).unwrap();
        prop_assert!(forward.mutually_inverse(&backward));
    }

    // Reassociation forms the middle factor at the product of the input
    // bounds, so it gets smaller inputs than the other properties.
    #[test]
    fn composition_product_reassociates(
        x in graded_set("x", 2),
        y in graded_set("y", 2),
        z in graded_set("z", 2),
    ) {
        let (forward, backward) = circ_reassociate(&x, &y, &z, 2).unwrap();
        prop_assert!(forward.mutually_inverse(&backward));
    }

    #[test]
    fn cartesian_product_is_associative_elementwise(
        x in graded_set("x", 3),
        y in graded_set("y", 3),
        z in graded_set("z", 3),
    ) {
        let bound = 3;
        let lhs = dot_compose(&dot_compose(&x, &y, bound), &z, bound);
        let rhs = dot_compose(&x, &dot_compose(&y, &z, bound), bound);
        let re = GradedMap::from_fn(&lhs, &rhs, |e| {
            let (xy, ze) = e.as_dot().unwrap();
            let (xe, ye) = xy.as_dot().unwrap();
            Ok(Elem::dot(xe, &Elem::dot(ye, ze)))
        })
        .unwrap();
        let back = GradedMap::from_fn(&rhs, &lhs, |e| {
            let (xe, yz) = e.as_dot().unwrap();
            let (ye, ze) = yz.as_dot().unwrap();
            Ok(Elem::dot(&Elem::dot(xe, ye), ze))
        })
        .unwrap();
        prop_assert!(re.mutually_inverse(&back));
    }

    #[test]
    fn normalization_is_idempotent_and_strategy_independent(letters in chain(), seed in any::<u64>()) {
        let cop = OperadCoproduct::new(idempotent_monoid(), idempotent_monoid());
        let refs: Vec<(Side, &str)> = letters.clone();
        let w = cop.word_from_chain(&refs).unwrap();
        let nf = cop.normalize(&w).unwrap();
        prop_assert!(cop.is_normal(&nf));
        prop_assert_eq!(cop.normalize(&nf).unwrap(), nf.clone());
        prop_assert_eq!(cop.normalize_random(&w, seed).unwrap(), nf);
    }

    #[test]
    fn evaluation_factors_through_the_normal_form(letters in chain()) {
        use operadics::table::{OperadMap, TableOperad};
        let cop = OperadCoproduct::new(idempotent_monoid(), idempotent_monoid());
        let target = TableOperad::endomorphism_monoid(2).unwrap();
        let p = cop.side(Side::Left);
        let into = OperadMap::from_fn(p, &target, |r| {
            Ok(match p.name_of(r).as_str() {
                "a" => target.ref_by_name("00").unwrap(),
                _ => target.identity(),
            })
        })
        .unwrap();
        let w = cop.word_from_chain(&letters).unwrap();
        let direct = cop.eval(&into, &into, &w).unwrap();
        let via = cop.eval(&into, &into, &cop.normalize(&w).unwrap()).unwrap();
        prop_assert_eq!(direct, via);
    }
}
