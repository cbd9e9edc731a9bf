mod common;

use std::collections::BTreeSet;

use common::{random_conjugate_pair, random_expr, random_pair_set, rng};
use conjugacy::expr::RationalExpr;
use conjugacy::oracle::{
    brute_witnesses, cross_validate, enumerate_pairs, naive_witnesses, EnumBounds, OracleVerdict,
};
use conjugacy::word::{Side, WordPair};
use rand::Rng;

// Nested stars over three-pair bodies reach the pair cap quickly; those runs
// are reported as truncated either way, so a lower cap only saves time.
fn bounds(max_unroll: usize, max_len: usize) -> EnumBounds {
    EnumBounds {
        max_unroll,
        max_len,
        max_pairs: 20_000,
    }
}

/// Expression built only from conjugate literals, so that most summands are
/// conjugate and the witness sets get compared word by word.
fn conjugate_expr(rng: &mut impl Rng, stars: usize) -> RationalExpr {
    let mut factors = Vec::new();
    for _ in 0..=stars {
        factors.push(RationalExpr::literal(random_conjugate_pair(
            rng, b"ab", 0, 3,
        )));
        if factors.len() <= stars {
            let body = if rng.gen_bool(0.3) {
                RationalExpr::sum([
                    RationalExpr::literal(random_conjugate_pair(rng, b"ab", 1, 3)),
                    RationalExpr::literal(random_conjugate_pair(rng, b"ab", 1, 3)),
                ])
            } else {
                RationalExpr::literal(random_conjugate_pair(rng, b"ab", 1, 3))
            };
            factors.push(RationalExpr::star(body));
        }
    }
    RationalExpr::concat(factors)
}

#[test]
fn engine_matches_oracle_on_random_expressions() {
    let mut rng = rng(11);
    for _ in 0..500 {
        let e = random_expr(&mut rng, 3);
        let report = cross_validate(&e, &bounds(4, 24), 10);
        assert!(report.agrees(), "{e}: {:?}", report.discrepancies);
        assert!(
            report.engine_error.is_none(),
            "{e}: {:?}",
            report.engine_error
        );
    }
}

#[test]
fn engine_witnesses_match_oracle_on_conjugate_literals() {
    let mut rng = rng(12);
    let mut compared = 0;
    for _ in 0..400 {
        let stars = rng.gen_range(1..=3);
        let e = conjugate_expr(&mut rng, stars);
        let report = cross_validate(&e, &bounds(4, 24), 10);
        assert!(report.agrees(), "{e}: {:?}", report.discrepancies);
        if report.verdict == OracleVerdict::AllConjugate && !report.truncated {
            compared += 1;
        }
    }
    assert!(compared > 50, "only {compared} untruncated conjugate cases");
}

#[test]
fn cut_families_agree_with_naive_search() {
    let mut rng = rng(13);
    for _ in 0..300 {
        let n = rng.gen_range(1..=2);
        let pairs: Vec<WordPair> = (0..n)
            .map(|_| random_conjugate_pair(&mut rng, b"ab", 1, 3))
            .collect();
        for side in Side::BOTH {
            let fast = brute_witnesses(&pairs, side, 7).unwrap();
            let slow = naive_witnesses(&pairs, side, 7);
            assert_eq!(fast, slow, "{pairs:?} {side}");
        }
    }
}

#[test]
fn enumeration_is_monotone_in_bounds() {
    let mut rng = rng(14);
    for _ in 0..100 {
        let e = random_expr(&mut rng, 2);
        let (small, _) = enumerate_pairs(&e, &bounds(2, 10));
        for bigger in [bounds(3, 10), bounds(2, 14), bounds(4, 16)] {
            let (large, _) = enumerate_pairs(&e, &bigger);
            assert!(small.is_subset(&large), "{e}");
        }
    }
}

#[test]
fn compactness_on_four_pair_families() {
    let mut rng = rng(15);
    let mut premises = 0;
    for _ in 0..400 {
        let family: Vec<WordPair> = loop {
            let set = random_pair_set(&mut rng);
            if set.len() == 4 {
                break set;
            }
        };
        let bound = 2 * family.iter().map(WordPair::max_len).max().unwrap();
        for side in Side::BOTH {
            let every_two = (0..4).all(|i| {
                (i + 1..4).all(|j| {
                    !brute_witnesses([&family[i], &family[j]], side, bound)
                        .unwrap()
                        .is_empty()
                })
            });
            if every_two {
                premises += 1;
                let all = brute_witnesses(&family, side, bound).unwrap();
                assert!(!all.is_empty(), "{family:?} {side}");
            }
        }
    }
    assert!(premises > 0);
}

#[test]
fn witness_lists_are_sorted_and_distinct() {
    let mut rng = rng(16);
    for _ in 0..100 {
        let pairs: Vec<WordPair> = (0..2)
            .map(|_| random_conjugate_pair(&mut rng, b"ab", 1, 4))
            .collect();
        let words = brute_witnesses(&pairs, Side::Inner, 12).unwrap();
        let distinct: BTreeSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), words.len());
        assert!(words
            .windows(2)
            .all(|w| (w[0].len(), &w[0]) < (w[1].len(), &w[1])));
    }
}
