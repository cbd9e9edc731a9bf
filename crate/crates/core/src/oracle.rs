//! Bounded brute-force ground truth.
//!
//! Nothing here relies on the witness engine: pairs are enumerated by
//! unrolling stars a bounded number of times, conjugacy is checked by
//! searching for `v` among the rotations of `u`, and common witnesses are
//! found by intersecting the cut families of the enumerated pairs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::expr::RationalExpr;
use crate::witness::{self, DecideOptions, EmptyCause, WitnessSet};
use crate::word::{cuts, is_witness, Side, Word, WordPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBounds {
    /// Iterations allowed for each star.
    pub max_unroll: usize,
    /// Cap on the length of each component.
    pub max_len: usize,
    /// Cap on the number of distinct pairs kept.
    pub max_pairs: usize,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds {
            max_unroll: 4,
            max_len: 64,
            max_pairs: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("pair {0} is not conjugate")]
    NonConjugate(WordPair),
    #[error("every pair is (,), so every word is a witness")]
    Unconstrained,
}

/// `v` occurs among the rotations of `u`, checked as a factor of `uu`.
pub fn rotation_conjugate(u: &Word, v: &Word) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    let doubled = u.concat(u);
    doubled
        .symbols()
        .windows(v.len())
        .any(|window| window == v.symbols())
}

struct Enumerator {
    bounds: EnumBounds,
    /// Cap on the total number of star iterations in a derivation.
    budget: usize,
    truncated: bool,
}

type Costed = BTreeMap<WordPair, usize>;

impl Enumerator {
    fn fits(&mut self, p: &WordPair) -> bool {
        let ok = p.u.len() <= self.bounds.max_len && p.v.len() <= self.bounds.max_len;
        if !ok {
            self.truncated = true;
        }
        ok
    }

    fn insert(&mut self, map: &mut Costed, pair: WordPair, cost: usize) {
        if cost > self.budget || !self.fits(&pair) {
            return;
        }
        if let Some(existing) = map.get_mut(&pair) {
            *existing = (*existing).min(cost);
        } else if map.len() < self.bounds.max_pairs {
            map.insert(pair, cost);
        } else {
            self.truncated = true;
        }
    }

    fn product(&mut self, left: &Costed, right: &Costed, extra: usize) -> Costed {
        let mut right: Vec<(&WordPair, usize)> = right.iter().map(|(p, c)| (p, *c)).collect();
        right.sort_by_key(|(p, _)| p.u.len());
        let max_len = self.bounds.max_len;
        let mut out = Costed::new();
        for (l, lc) in left {
            for &(r, rc) in &right {
                // Sorted by |u|, so nothing further along fits either.
                if l.u.len() + r.u.len() > max_len {
                    self.truncated = true;
                    break;
                }
                if l.v.len() + r.v.len() > max_len {
                    self.truncated = true;
                    continue;
                }
                self.insert(&mut out, l.concat(r), lc + rc + extra);
            }
        }
        out
    }

    fn run(&mut self, e: &RationalExpr) -> Costed {
        match e {
            RationalExpr::EmptySet => Costed::new(),
            RationalExpr::Literal(p) => {
                let mut out = Costed::new();
                self.insert(&mut out, p.clone(), 0);
                out
            }
            RationalExpr::Sum(children) => {
                let mut out = Costed::new();
                for child in children {
                    for (pair, cost) in self.run(child) {
                        self.insert(&mut out, pair, cost);
                    }
                }
                out
            }
            RationalExpr::Concat(children) => {
                let mut acc = Costed::from([(WordPair::empty(), 0)]);
                for child in children {
                    let next = self.run(child);
                    acc = self.product(&acc, &next, 0);
                }
                acc
            }
            RationalExpr::Star(inner) => {
                let body = self.run(inner);
                let mut out = Costed::from([(WordPair::empty(), 0)]);
                let mut frontier = out.clone();
                for _ in 0..self.bounds.max_unroll {
                    frontier = self.product(&frontier, &body, 1);
                    if frontier.is_empty() {
                        break;
                    }
                    for (pair, cost) in &frontier {
                        self.insert(&mut out, pair.clone(), *cost);
                    }
                }
                out
            }
        }
    }
}

fn enumerate_costed(e: &RationalExpr, bounds: &EnumBounds, budget: usize) -> (Costed, bool) {
    let mut enumerator = Enumerator {
        bounds: *bounds,
        budget,
        truncated: false,
    };
    let pairs = enumerator.run(e);
    (pairs, enumerator.truncated)
}

/// All pairs derivable with every star iterated at most `max_unroll` times,
/// deduplicated and sorted. The flag reports whether the length or pair
/// caps dropped anything.
pub fn enumerate_pairs(e: &RationalExpr, bounds: &EnumBounds) -> (BTreeSet<WordPair>, bool) {
    let (pairs, truncated) = enumerate_costed(e, bounds, usize::MAX);
    (pairs.into_keys().collect(), truncated)
}

/// First pair in sorted order that is not conjugate.
pub fn check_all_conjugate<'a>(pairs: impl IntoIterator<Item = &'a WordPair>) -> Option<WordPair> {
    pairs
        .into_iter()
        .find(|p| !rotation_conjugate(&p.u, &p.v))
        .cloned()
}

fn least_costly_counterexample(pairs: &Costed) -> Option<WordPair> {
    pairs
        .iter()
        .filter(|(p, _)| !rotation_conjugate(&p.u, &p.v))
        .min_by(|a, b| a.1.cmp(b.1).then_with(|| a.0.cmp(b.0)))
        .map(|(p, _)| p.clone())
}

/// Breadth-first search on the total number of star iterations, up to
/// `bounds.max_unroll`; the reported pair has the fewest iterations, ties
/// broken lexicographically.
pub fn find_counterexample(e: &RationalExpr, bounds: &EnumBounds) -> Option<WordPair> {
    (0..=bounds.max_unroll).find_map(|budget| {
        let level = EnumBounds {
            max_unroll: budget,
            ..*bounds
        };
        let (pairs, _) = enumerate_costed(e, &level, budget);
        least_costly_counterexample(&pairs)
    })
}

/// Every word of length at most `max_len` that is a `side` witness of all
/// `pairs`. Candidates come from the cut families `(xy)*x` (inner) or
/// `(yx)*y` (outer) of one nonempty pair, which contain all its witnesses.
pub fn brute_witnesses<'a>(
    pairs: impl IntoIterator<Item = &'a WordPair>,
    side: Side,
    max_len: usize,
) -> Result<Vec<Word>, OracleError> {
    let pairs: Vec<&WordPair> = pairs.into_iter().collect();
    if let Some(bad) = pairs.iter().find(|p| !rotation_conjugate(&p.u, &p.v)) {
        return Err(OracleError::NonConjugate((*bad).clone()));
    }
    let Some(anchor) = pairs.iter().find(|p| !p.is_empty()) else {
        return Err(OracleError::Unconstrained);
    };
    let mut candidates = BTreeSet::new();
    for cut in cuts(&anchor.u, &anchor.v) {
        let (head, rest) = match side {
            Side::Inner => (cut.x, cut.y),
            Side::Outer => (cut.y, cut.x),
        };
        let unit = head.concat(&rest);
        let mut z = head;
        while z.len() <= max_len {
            candidates.insert(z.clone());
            z = unit.concat(&z);
        }
    }
    let mut out: Vec<Word> = candidates
        .into_iter()
        .filter(|z| pairs.iter().all(|p| is_witness(z, p, side)))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Every word over `alphabet` of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &[u8], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &c in alphabet {
                let mut longer = w.clone();
                longer.push(c);
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned().map(Word::from_symbols));
        layer = next;
    }
    out
}

/// Filters every word over the letters of `pairs` instead of using cut
/// families. Exponential; meant for tiny inputs only.
pub fn naive_witnesses<'a>(
    pairs: impl IntoIterator<Item = &'a WordPair>,
    side: Side,
    max_len: usize,
) -> Vec<Word> {
    let pairs: Vec<&WordPair> = pairs.into_iter().collect();
    let alphabet: BTreeSet<u8> = pairs
        .iter()
        .flat_map(|p| p.u.symbols().iter().chain(p.v.symbols()))
        .copied()
        .collect();
    let alphabet: Vec<u8> = alphabet.into_iter().collect();
    all_words(&alphabet, max_len)
        .into_iter()
        .filter(|z| pairs.iter().all(|p| is_witness(z, p, side)))
        .collect()
}

/// Checks the local claim behind an empty witness set without the engine.
pub fn replay(cause: &EmptyCause) -> bool {
    match cause {
        EmptyCause::NonConjugate { pair } => !rotation_conjugate(&pair.u, &pair.v),
        EmptyCause::NoCommonWitness { first, second } => {
            let bound = 2 * first.max_len().max(second.max_len());
            Side::BOTH.iter().all(|&side| {
                brute_witnesses([first, second], side, bound).is_ok_and(|w| w.is_empty())
            })
        }
        EmptyCause::Rejected {
            word,
            inner,
            outer,
            pair,
        } => {
            (!inner || !is_witness(word, pair, Side::Inner))
                && (!outer || !is_witness(word, pair, Side::Outer))
        }
        EmptyCause::DelayUndefined { left, right } => {
            !left.is_suffix_of(right) && !right.is_suffix_of(left)
        }
        EmptyCause::Disagreement { first, second } => {
            first.0 != second.0 || !((first.1 && second.1) || (first.2 && second.2))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    AllConjugate,
    Counterexample(WordPair),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub pairs_checked: usize,
    pub truncated: bool,
    pub verdict: OracleVerdict,
    /// Common witnesses of the enumerated pairs, up to the witness length.
    pub inner_witnesses: Vec<Word>,
    pub outer_witnesses: Vec<Word>,
    /// Every enumerated pair was `(ε,ε)` (or there were none).
    pub unconstrained: bool,
    pub engine_conjugate: Option<bool>,
    pub engine_error: Option<String>,
    /// Hard disagreements between the engine and the oracle.
    pub discrepancies: Vec<String>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Runs the bounded oracle on `e` and compares it with the engine's
/// decision. A conjugate verdict contradicted by an enumerated pair is a
/// discrepancy; so is any witness mismatch when the expression is a single
/// monomial and nothing was truncated.
pub fn cross_validate(e: &RationalExpr, bounds: &EnumBounds, witness_len: usize) -> OracleReport {
    let (costed, truncated) = enumerate_costed(e, bounds, usize::MAX);
    let verdict = match least_costly_counterexample(&costed) {
        Some(pair) => OracleVerdict::Counterexample(pair),
        None => OracleVerdict::AllConjugate,
    };
    let pairs: Vec<&WordPair> = costed.keys().collect();

    let mut inner_witnesses = Vec::new();
    let mut outer_witnesses = Vec::new();
    let mut unconstrained = false;
    if verdict == OracleVerdict::AllConjugate {
        match (
            brute_witnesses(pairs.iter().copied(), Side::Inner, witness_len),
            brute_witnesses(pairs.iter().copied(), Side::Outer, witness_len),
        ) {
            (Ok(inner), Ok(outer)) => {
                inner_witnesses = inner;
                outer_witnesses = outer;
            }
            _ => unconstrained = true,
        }
    }

    let mut report = OracleReport {
        pairs_checked: pairs.len(),
        truncated,
        verdict,
        inner_witnesses,
        outer_witnesses,
        unconstrained,
        engine_conjugate: None,
        engine_error: None,
        discrepancies: Vec::new(),
    };

    let engine = match witness::decide(e, &DecideOptions::default()) {
        Ok(engine) => engine,
        Err(err) => {
            report.engine_error = Some(err.to_string());
            return report;
        }
    };
    report.engine_conjugate = Some(engine.conjugate);

    if let (true, OracleVerdict::Counterexample(pair)) = (engine.conjugate, &report.verdict) {
        report
            .discrepancies
            .push(format!("engine says conjugate but {pair} is not"));
        return report;
    }
    if !engine.conjugate || report.verdict != OracleVerdict::AllConjugate {
        return report;
    }
    let [summand] = engine.summands.as_slice() else {
        return report;
    };
    let set = &summand.witnesses;
    if matches!(set, WitnessSet::Universal) {
        if !report.unconstrained {
            report
                .discrepancies
                .push("engine reports every word as a witness of a constrained set".into());
        }
        return report;
    }
    if report.unconstrained {
        if !truncated {
            report
                .discrepancies
                .push(format!("engine reports {set} for a set of empty pairs"));
        }
        return report;
    }
    for (side, oracle_words) in [
        (Side::Inner, &report.inner_witnesses),
        (Side::Outer, &report.outer_witnesses),
    ] {
        let engine_words = witness::enumerate_witnesses(set, side, witness_len)
            .expect("non-universal sets enumerate");
        let oracle_set: BTreeSet<&Word> = oracle_words.iter().collect();
        let engine_set: BTreeSet<&Word> = engine_words.iter().collect();
        if let Some(extra) = engine_set.difference(&oracle_set).next() {
            report.discrepancies.push(format!(
                "engine {side} witness \"{extra}\" fails an enumerated pair"
            ));
        }
        if !truncated {
            if let Some(missing) = oracle_set.difference(&engine_set).next() {
                report.discrepancies.push(format!(
                    "oracle {side} witness \"{missing}\" is missing from {set}"
                ));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(u: &str, v: &str) -> WordPair {
        WordPair::parse(u, v).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn bounds(max_unroll: usize) -> EnumBounds {
        EnumBounds {
            max_unroll,
            max_len: 24,
            max_pairs: 100_000,
        }
    }

    #[test]
    fn enumeration_examples() {
        let (pairs, truncated) = enumerate_pairs(&parse("(ab,ba)*").unwrap(), &bounds(2));
        assert!(!truncated);
        assert_eq!(
            pairs.into_iter().collect::<Vec<_>>(),
            vec![p("", ""), p("ab", "ba"), p("abab", "baba")]
        );
        let (pairs, _) = enumerate_pairs(&parse("(a,b)+(b,a)").unwrap(), &bounds(3));
        assert_eq!(
            pairs.into_iter().collect::<Vec<_>>(),
            vec![p("a", "b"), p("b", "a")]
        );
        let (pairs, _) = enumerate_pairs(&parse("0*").unwrap(), &bounds(3));
        assert_eq!(pairs.into_iter().collect::<Vec<_>>(), vec![p("", "")]);
        let (pairs, _) = enumerate_pairs(&parse("0").unwrap(), &bounds(3));
        assert!(pairs.is_empty());
    }

    #[test]
    fn truncation_is_reported() {
        let tight = EnumBounds {
            max_unroll: 4,
            max_len: 4,
            max_pairs: 100,
        };
        let (pairs, truncated) = enumerate_pairs(&parse("(ab,ba)*").unwrap(), &tight);
        assert!(truncated);
        assert_eq!(pairs.len(), 3);
    }

    #[test]
    fn conjugacy_scan() {
        assert_eq!(
            check_all_conjugate(&[p("ab", "ba"), p("abab", "baba")]),
            None
        );
        assert_eq!(
            check_all_conjugate(&[p("ababba", "babaab")]),
            Some(p("ababba", "babaab"))
        );
        assert_eq!(check_all_conjugate(&[]), None);
    }

    #[test]
    fn witness_search() {
        assert_eq!(
            brute_witnesses(&[p("ab", "ba"), p("ac", "ca")], Side::Inner, 6).unwrap(),
            vec![w("a")]
        );
        assert!(
            brute_witnesses(&[p("ab", "ba"), p("ba", "ab")], Side::Inner, 8)
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            brute_witnesses(&[p("ab", "ba")], Side::Inner, 5).unwrap(),
            vec![w("a"), w("aba"), w("ababa")]
        );
        assert_eq!(
            brute_witnesses(&[p("ab", "bb")], Side::Inner, 5),
            Err(OracleError::NonConjugate(p("ab", "bb")))
        );
        assert_eq!(
            brute_witnesses(&[p("", "")], Side::Inner, 5),
            Err(OracleError::Unconstrained)
        );
    }

    #[test]
    fn counterexamples() {
        let e = parse("(ab,ba)*(ba,ab)*").unwrap();
        assert_eq!(
            find_counterexample(&e, &bounds(8)),
            Some(p("ababba", "babaab"))
        );
        assert_eq!(
            find_counterexample(&parse("(ab,ba)*").unwrap(), &bounds(4)),
            None
        );
    }

    #[test]
    fn cross_validation() {
        let report = cross_validate(&parse("(ab,b)(bab,abb)*(b,ab)").unwrap(), &bounds(3), 10);
        assert!(report.agrees(), "{:?}", report.discrepancies);
        assert_eq!(report.verdict, OracleVerdict::AllConjugate);
        assert_eq!(
            report.inner_witnesses,
            vec![w("ab"), w("abbab"), w("abbabbab")]
        );

        let report = cross_validate(&parse("(ab,ba)*(ba,ab)*").unwrap(), &bounds(3), 10);
        assert!(report.agrees());
        assert_eq!(
            report.verdict,
            OracleVerdict::Counterexample(p("ababba", "babaab"))
        );

        let report = cross_validate(&parse("0").unwrap(), &bounds(3), 10);
        assert_eq!(report.pairs_checked, 0);
        assert_eq!(report.verdict, OracleVerdict::AllConjugate);
        assert!(report.agrees());
    }

    #[test]
    fn replays() {
        assert!(replay(&EmptyCause::NonConjugate {
            pair: p("ab", "bb")
        }));
        assert!(!replay(&EmptyCause::NonConjugate {
            pair: p("ab", "ba")
        }));
        assert!(replay(&EmptyCause::NoCommonWitness {
            first: p("ab", "ba"),
            second: p("ba", "ab")
        }));
        assert!(!replay(&EmptyCause::NoCommonWitness {
            first: p("ab", "ba"),
            second: p("ac", "ca")
        }));
    }
}
