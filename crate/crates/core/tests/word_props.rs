use conjugacy::word::{
    cuts, cyclic_shift, fine_wilf_same_root, is_conjugate, is_primitive, is_witness, prefix_delay,
    primitive_root, reverse, suffix_delay, Side, Word, WordPair,
};
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    proptest::string::string_regex(&format!("[ab]{{0,{max}}}"))
        .unwrap()
        .prop_map(|s| s.parse().unwrap())
}

fn nonempty(max: usize) -> impl Strategy<Value = Word> {
    proptest::string::string_regex(&format!("[abc]{{1,{max}}}"))
        .unwrap()
        .prop_map(|s| s.parse().unwrap())
}

fn conjugate_pair() -> impl Strategy<Value = WordPair> {
    (nonempty(9), 0usize..10).prop_map(|(u, i)| {
        let v = cyclic_shift(&u, i);
        WordPair::new(u, v)
    })
}

proptest! {
    #[test]
    fn shift_preserves_length_and_composes(w in word(10), i in 0usize..20, j in 0usize..20) {
        let once = cyclic_shift(&w, i);
        prop_assert_eq!(once.len(), w.len());
        prop_assert_eq!(cyclic_shift(&once, j), cyclic_shift(&w, i + j));
    }

    #[test]
    fn root_power_reconstructs(w in nonempty(12)) {
        let (root, n) = primitive_root(&w).unwrap();
        prop_assert_eq!(root.pow(n), w.clone());
        prop_assert!(is_primitive(&root).unwrap());
        prop_assert_eq!(is_primitive(&w).unwrap(), n == 1);
    }

    #[test]
    fn powers_share_the_root(w in nonempty(5), n in 1usize..5) {
        let (root, k) = primitive_root(&w).unwrap();
        prop_assert_eq!(primitive_root(&w.pow(n)).unwrap(), (root, k * n));
    }

    #[test]
    fn cuts_decompose_the_pair(p in conjugate_pair()) {
        let found = cuts(&p.u, &p.v);
        prop_assert!(!found.is_empty());
        for cut in &found {
            prop_assert_eq!(cut.pair(), p.clone());
        }
    }

    #[test]
    fn distinct_primitive_pairs_have_one_cut(p in conjugate_pair()) {
        if p.u != p.v && is_primitive(&p.u).unwrap() {
            prop_assert_eq!(cuts(&p.u, &p.v).len(), 1);
        }
    }

    #[test]
    fn conjugacy_is_symmetric(u in word(6), v in word(6)) {
        prop_assert_eq!(is_conjugate(&u, &v), is_conjugate(&v, &u));
        prop_assert_eq!(is_conjugate(&u, &v), !cuts(&u, &v).is_empty());
    }

    #[test]
    fn cut_families_are_witnesses(p in conjugate_pair(), k in 0usize..3) {
        for cut in cuts(&p.u, &p.v) {
            let inner = cut.x.concat(&cut.y).pow(k).concat(&cut.x);
            let outer = cut.y.concat(&cut.x).pow(k).concat(&cut.y);
            prop_assert!(is_witness(&inner, &p, Side::Inner));
            prop_assert!(is_witness(&outer, &p, Side::Outer));
        }
    }

    #[test]
    fn delays_undo_concatenation(a in word(6), b in word(6)) {
        let ab = a.concat(&b);
        prop_assert_eq!(prefix_delay(&a, &ab), Some(b.clone()));
        prop_assert_eq!(suffix_delay(&b, &ab), Some(a.clone()));
        prop_assert_eq!(prefix_delay(&ab, &a), Some(b));
    }

    #[test]
    fn reversal_mirrors_prefix_and_suffix_delays(a in word(6), b in word(6)) {
        let rev = |d: Option<Word>| d.map(|w| reverse(&w));
        prop_assert_eq!(rev(prefix_delay(&a, &b)), suffix_delay(&reverse(&a), &reverse(&b)));
    }

    #[test]
    fn fine_wilf_matches_roots(u in nonempty(6), v in nonempty(6)) {
        let same = primitive_root(&u).unwrap().0 == primitive_root(&v).unwrap().0;
        prop_assert_eq!(fine_wilf_same_root(&u, &v).unwrap(), same);
    }

    #[test]
    fn commuting_words_share_a_root(u in nonempty(4), n in 1usize..4, m in 1usize..4) {
        let (a, b) = (u.pow(n), u.pow(m));
        prop_assert_eq!(a.concat(&b), b.concat(&a));
        prop_assert!(fine_wilf_same_root(&a, &b).unwrap());
    }
}

#[test]
fn empty_word_edge_cases() {
    let e = Word::empty();
    assert_eq!(cyclic_shift(&e, 3), e);
    assert!(primitive_root(&e).is_err());
    assert!(is_conjugate(&e, &e));
    assert_eq!(cuts(&e, &e).len(), 1);
    assert!(is_witness(
        &"abc".parse().unwrap(),
        &WordPair::empty(),
        Side::Inner
    ));
}
