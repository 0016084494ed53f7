mod common;

use common::*;
use higman_core::{FinalSegment, Word};
use proptest::prelude::*;

fn segment_strategy(max_len: usize) -> impl Strategy<Value = FinalSegment> {
    prop::collection::vec(prop::collection::vec(0u16..2, 0..=max_len), 0..=3).prop_map(|gens| {
        FinalSegment::new(
            ab(),
            gens.into_iter()
                .map(|g| Word::new(g.into_iter().map(higman_core::Letter).collect()))
                .collect(),
        )
    })
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..2, 0..=max_len).prop_map(|v| Word::new(v.into_iter().map(higman_core::Letter).collect()))
}

#[test]
fn residual_examples() {
    let a = ab();
    let f = seg(&a, &["aa", "bb"]);
    assert_eq!(f.right_residual(&w(&a, "b")), seg(&a, &["b", "aa"]));
    assert_eq!(f.right_residual(&w(&a, "a")), seg(&a, &["a", "bb"]));
    assert_eq!(f.right_residual(&w(&a, "ab")), seg(&a, &["a", "b"]));
    assert!(f.right_residual(&w(&a, "aa")).is_full());
    assert_eq!(f.to_string(), "↑{aa,bb}");
    assert_eq!(FinalSegment::empty(a.clone()).to_string(), "∅");
    assert_eq!(FinalSegment::full(a).to_string(), "A*");
}

#[test]
fn basis_is_canonical() {
    let a = ab();
    let f = seg(&a, &["bb", "aab", "b", "ab"]);
    assert_eq!(f.basis_strings(), vec!["b"]);
    assert_eq!(seg(&a, &["ba", "ab"]), seg(&a, &["ab", "ba", "aba"]));
}

proptest! {
    #[test]
    fn algebra_matches_word_sets(f in segment_strategy(3), g in segment_strategy(3), u in word_strategy(2)) {
        let a = ab();
        let inf = |v: &Word| member(&a, f.basis(), v);
        let ing = |v: &Word| member(&a, g.basis(), v);
        let union = f.union(&g).unwrap();
        let meet = f.intersect(&g).unwrap();
        let prod = f.concat(&g).unwrap();
        for v in all_words(&a, ORACLE_BOUND) {
            prop_assert_eq!(f.contains(&v), inf(&v));
            prop_assert_eq!(union.contains(&v), inf(&v) || ing(&v));
            prop_assert_eq!(meet.contains(&v), inf(&v) && ing(&v));
            prop_assert_eq!(prod.contains(&v), in_concat(inf, ing, &v));
            prop_assert_eq!(f.right_residual(&u).contains(&v), inf(&v.concat(&u)));
            prop_assert_eq!(f.left_residual(&u).contains(&v), inf(&u.concat(&v)));
            prop_assert_eq!(f.involute().contains(&v), inf(&a.involute(&v)));
        }
    }

    #[test]
    fn basis_is_an_antichain(f in segment_strategy(4)) {
        let a = ab();
        for (i, u) in f.basis().iter().enumerate() {
            for (j, v) in f.basis().iter().enumerate() {
                prop_assert!(i == j || !embeds(&a, u, v));
            }
        }
    }

    #[test]
    fn inclusion_matches_word_sets(f in segment_strategy(3), g in segment_strategy(3)) {
        // generators have length at most 3, so sets of words up to 3 decide inclusion
        let sub = language(&f, 3).is_subset(&language(&g, 3));
        prop_assert_eq!(f.is_subset(&g).unwrap(), sub);
        prop_assert_eq!(f.leq(&g).unwrap(), g.is_subset(&f).unwrap());
    }

    #[test]
    fn algebra_distance_matches_definition(f in segment_strategy(2), g in segment_strategy(2)) {
        prop_assume!(!f.is_empty() && !g.is_empty());
        let d = FinalSegment::algebra_distance(&f, &g).unwrap();
        for v in all_words(f.alphabet(), 5) {
            prop_assert_eq!(d.contains(&v), in_algebra_distance(&f, &g, &v));
        }
    }
}
