//! Common-witness sets and the conjugacy decision.
//!
//! A set of pairs has either no common witness, exactly one, or infinitely
//! many; in the last case the witnesses are exactly those of a single
//! primitive root pair. [`WitnessSet`] captures that trichotomy (plus the
//! degenerate case of sets containing only `(ε,ε)`), and the functions here
//! compute it bottom-up over a sumfree monomial: star bodies first, then one
//! set per singleton redux, then their side-respecting intersection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{simplify_monomial, to_snf_with_limit, RationalExpr, SnfError, SumfreeMonomial};
use crate::oracle::{self, EnumBounds};
use crate::word::{cuts, is_primitive, is_witness, suffix_delay, Side, Word, WordPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("pair {0} is not a conjugate pair of primitive nonempty words")]
    NotPrimitiveConjugate(WordPair),
    #[error("the universal witness set cannot be enumerated")]
    UniversalNotEnumerable,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Exact description of the common witnesses of a set of pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum WitnessSet {
    /// No common witness on either side.
    Empty,
    /// A single word, witnessing on the flagged sides.
    Unique {
        word: Word,
        inner: bool,
        outer: bool,
    },
    /// Exactly the witnesses of a primitive conjugate pair.
    AllOf { root: WordPair },
    /// Every word, on both sides. Only sets within `{(ε,ε)}` have this.
    Universal,
}

impl WitnessSet {
    pub fn unique(word: Word, inner: bool, outer: bool) -> Self {
        if inner || outer {
            WitnessSet::Unique { word, inner, outer }
        } else {
            WitnessSet::Empty
        }
    }

    pub fn all_of(root: WordPair) -> Self {
        WitnessSet::AllOf { root }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, WitnessSet::Empty)
    }
}

impl fmt::Display for WitnessSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSet::Empty => f.write_str("no common witness"),
            WitnessSet::Universal => f.write_str("every word"),
            WitnessSet::Unique { word, inner, outer } => {
                let sides = match (inner, outer) {
                    (true, true) => "inner and outer",
                    (true, false) => "inner",
                    _ => "outer",
                };
                write!(f, "unique {sides} witness \"{word}\"")
            }
            WitnessSet::AllOf { root } => {
                let (inner, outer) = family_patterns(root);
                write!(f, "all witnesses of {root}: inner {inner}, outer {outer}")
            }
        }
    }
}

/// Readable patterns such as `(ab)*a` for the inner and outer families of a
/// primitive root pair.
pub fn family_patterns(root: &WordPair) -> (String, String) {
    if root.u == root.v {
        let star = format!("({})*", root.u);
        return (star.clone(), star);
    }
    match cuts(&root.u, &root.v).first() {
        Some(cut) => (
            format!("({}{})*{}", cut.x, cut.y, cut.x),
            format!("({}{})*{}", cut.y, cut.x, cut.y),
        ),
        None => (String::new(), String::new()),
    }
}

/// The local fact that made a witness computation come out empty. Each
/// variant can be checked on its own with the brute-force primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmptyCause {
    /// A pair of the language, or of a star body's language, is not conjugate.
    NonConjugate { pair: WordPair },
    /// Two conjugate pairs share no witness on either side.
    NoCommonWitness { first: WordPair, second: WordPair },
    /// The only candidate word fails to witness `pair` on its sides.
    Rejected {
        word: Word,
        inner: bool,
        outer: bool,
        pair: WordPair,
    },
    /// Neither word is a suffix of the other, so the wrapped witness
    /// does not exist.
    DelayUndefined { left: Word, right: Word },
    /// Two unique witnesses that cannot be merged.
    Disagreement {
        first: (Word, bool, bool),
        second: (Word, bool, bool),
    },
}

impl fmt::Display for EmptyCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmptyCause::NonConjugate { pair } => write!(f, "{pair} is not conjugate"),
            EmptyCause::NoCommonWitness { first, second } => {
                write!(f, "{first} and {second} have no common witness")
            }
            EmptyCause::Rejected { word, pair, .. } => {
                write!(f, "\"{word}\" does not witness {pair}")
            }
            EmptyCause::DelayUndefined { left, right } => {
                write!(
                    f,
                    "neither of \"{left}\" and \"{right}\" is a suffix of the other"
                )
            }
            EmptyCause::Disagreement { first, second } => {
                write!(
                    f,
                    "unique witnesses \"{}\" and \"{}\" disagree",
                    first.0, second.0
                )
            }
        }
    }
}

/// A witness set together with the reason it is empty, when it is.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Verdict {
    Found(WitnessSet),
    Refuted(EmptyCause),
}

impl Verdict {
    fn into_set(self) -> WitnessSet {
        match self {
            Verdict::Found(set) => set,
            Verdict::Refuted(_) => WitnessSet::Empty,
        }
    }

    fn cause(&self) -> Option<&EmptyCause> {
        match self {
            Verdict::Found(_) => None,
            Verdict::Refuted(cause) => Some(cause),
        }
    }
}

type Result<T, E = WitnessError> = std::result::Result<T, E>;

/// `z ∈ (xy)*x`.
fn in_family(z: &Word, x: &Word, y: &Word) -> bool {
    let period = x.len() + y.len();
    if period == 0 {
        return z.is_empty();
    }
    if z.len() % period != x.len() % period {
        return false;
    }
    let unit = x.concat(y);
    z.symbols()
        .iter()
        .enumerate()
        .all(|(i, &s)| unit.symbols()[i % period] == s)
}

fn family_member(z: &Word, root: &WordPair, side: Side) -> bool {
    cuts(&root.u, &root.v).iter().any(|cut| match side {
        Side::Inner => in_family(z, &cut.x, &cut.y),
        Side::Outer => in_family(z, &cut.y, &cut.x),
    })
}

/// Whether `z` is a `side` witness of every pair the set describes.
pub fn membership(z: &Word, w: &WitnessSet, side: Side) -> bool {
    match w {
        WitnessSet::Empty => false,
        WitnessSet::Universal => true,
        WitnessSet::Unique { word, inner, outer } => {
            z == word
                && match side {
                    Side::Inner => *inner,
                    Side::Outer => *outer,
                }
        }
        WitnessSet::AllOf { root } => family_member(z, root, side),
    }
}

fn pair_verdict(p: &WordPair) -> Verdict {
    if p.is_empty() {
        return Verdict::Found(WitnessSet::Universal);
    }
    match p.primitive_root() {
        Some(root) => Verdict::Found(WitnessSet::all_of(root)),
        None => Verdict::Refuted(EmptyCause::NonConjugate { pair: p.clone() }),
    }
}

/// Witnesses of a single pair: all words for `(ε,ε)`, those of its primitive
/// root for other conjugate pairs, none otherwise.
pub fn pair_witnesses(p: &WordPair) -> WitnessSet {
    pair_verdict(p).into_set()
}

fn check_primitive_conjugate(p: &WordPair) -> Result<()> {
    let ok = !p.u.is_empty()
        && p.is_conjugate()
        && is_primitive(&p.u).unwrap_or(false)
        && is_primitive(&p.v).unwrap_or(false);
    if ok {
        Ok(())
    } else {
        Err(WitnessError::NotPrimitiveConjugate(p.clone()))
    }
}

fn two_root_verdict(p1: &WordPair, p2: &WordPair) -> Result<Verdict> {
    check_primitive_conjugate(p1)?;
    check_primitive_conjugate(p2)?;
    if p1 == p2 {
        return Ok(Verdict::Found(WitnessSet::all_of(p1.clone())));
    }
    // A unique common witness is at most twice as long as the longer pair,
    // so it is x or xyx for some cut (x,y) of that pair.
    let longer = if p2.u.len() > p1.u.len() { p2 } else { p1 };
    let mut found: BTreeSet<(Word, Side)> = BTreeSet::new();
    for cut in cuts(&longer.u, &longer.v) {
        for k in 0..2 {
            let inner = cut.x.concat(&cut.y).pow(k).concat(&cut.x);
            let outer = cut.y.concat(&cut.x).pow(k).concat(&cut.y);
            for (z, side) in [(inner, Side::Inner), (outer, Side::Outer)] {
                if family_member(&z, p1, side) && family_member(&z, p2, side) {
                    found.insert((z, side));
                }
            }
        }
    }
    let words: BTreeSet<&Word> = found.iter().map(|(z, _)| z).collect();
    match words.len() {
        0 => Ok(Verdict::Refuted(EmptyCause::NoCommonWitness {
            first: p1.clone(),
            second: p2.clone(),
        })),
        1 => {
            let word = (*words.iter().next().unwrap()).clone();
            let inner = found.contains(&(word.clone(), Side::Inner));
            let outer = found.contains(&(word.clone(), Side::Outer));
            Ok(Verdict::Found(WitnessSet::unique(word, inner, outer)))
        }
        _ => Err(WitnessError::Invariant(format!(
            "distinct primitive pairs {p1} and {p2} share several witnesses"
        ))),
    }
}

/// Common witnesses of two conjugate pairs of primitive words.
pub fn two_root_witnesses(p1: &WordPair, p2: &WordPair) -> Result<WitnessSet> {
    two_root_verdict(p1, p2).map(Verdict::into_set)
}

fn two_pair_verdict(p1: &WordPair, p2: &WordPair) -> Result<Verdict> {
    for p in [p1, p2] {
        if !p.is_conjugate() {
            return Ok(Verdict::Refuted(EmptyCause::NonConjugate {
                pair: p.clone(),
            }));
        }
    }
    match (p1.is_empty(), p2.is_empty()) {
        (true, true) => Ok(Verdict::Found(WitnessSet::Universal)),
        (true, false) => Ok(pair_verdict(p2)),
        (false, true) => Ok(pair_verdict(p1)),
        (false, false) => {
            let r1 = p1.primitive_root().expect("conjugate nonempty pair");
            let r2 = p2.primitive_root().expect("conjugate nonempty pair");
            Ok(match two_root_verdict(&r1, &r2)? {
                Verdict::Refuted(_) => Verdict::Refuted(EmptyCause::NoCommonWitness {
                    first: p1.clone(),
                    second: p2.clone(),
                }),
                found => found,
            })
        }
    }
}

/// Common witnesses of two arbitrary pairs, through their primitive roots.
pub fn two_pair_witnesses(p1: &WordPair, p2: &WordPair) -> Result<WitnessSet> {
    two_pair_verdict(p1, p2).map(Verdict::into_set)
}

fn unique_against_root(word: &Word, inner: bool, outer: bool, root: &WordPair) -> Verdict {
    let keep_inner = inner && family_member(word, root, Side::Inner);
    let keep_outer = outer && family_member(word, root, Side::Outer);
    if keep_inner || keep_outer {
        Verdict::Found(WitnessSet::unique(word.clone(), keep_inner, keep_outer))
    } else {
        Verdict::Refuted(EmptyCause::Rejected {
            word: word.clone(),
            inner,
            outer,
            pair: root.clone(),
        })
    }
}

fn intersect_verdict(w1: &WitnessSet, w2: &WitnessSet) -> Result<Verdict> {
    use WitnessSet::*;
    Ok(match (w1, w2) {
        (Empty, _) | (_, Empty) => {
            return Err(WitnessError::Invariant(
                "empty sets must be handled with their cause".into(),
            ))
        }
        (Universal, other) | (other, Universal) => Verdict::Found(other.clone()),
        (AllOf { root: r1 }, AllOf { root: r2 }) => two_root_verdict(r1, r2)?,
        (Unique { word, inner, outer }, AllOf { root })
        | (AllOf { root }, Unique { word, inner, outer }) => {
            unique_against_root(word, *inner, *outer, root)
        }
        (
            Unique {
                word: z1,
                inner: i1,
                outer: o1,
            },
            Unique {
                word: z2,
                inner: i2,
                outer: o2,
            },
        ) => {
            if z1 == z2 && ((i1 & i2) || (o1 & o2)) {
                Verdict::Found(WitnessSet::unique(z1.clone(), i1 & i2, o1 & o2))
            } else {
                Verdict::Refuted(EmptyCause::Disagreement {
                    first: (z1.clone(), *i1, *o1),
                    second: (z2.clone(), *i2, *o2),
                })
            }
        }
    })
}

/// Side-respecting intersection: the words that are inner witnesses under
/// both descriptions, together with those that are outer witnesses under
/// both.
pub fn intersect(w1: &WitnessSet, w2: &WitnessSet) -> Result<WitnessSet> {
    if w1.is_empty() || w2.is_empty() {
        return Ok(WitnessSet::Empty);
    }
    intersect_verdict(w1, w2).map(Verdict::into_set)
}

/// Wrap a unique witness `z'` of `E ∪ {c}` into the witness of
/// `prefix · E* · suffix`.
fn wrap_unique(
    z: &Word,
    inner: bool,
    outer: bool,
    prefix: &WordPair,
    suffix: &WordPair,
) -> Result<Verdict> {
    let (a0, b0) = (&prefix.u, &prefix.v);
    let (a1, b1) = (&suffix.u, &suffix.v);
    let mut routes: Vec<(Word, bool, bool)> = Vec::new();
    let mut failure = None;
    if inner {
        let left = a0.concat(z);
        match suffix_delay(&left, b0) {
            Some(w) => {
                let is_inner = left.len() >= b0.len();
                routes.push((w, is_inner, !is_inner));
            }
            None => failure = Some((left, b0.clone())),
        }
    }
    if outer {
        let right = b0.concat(z);
        match suffix_delay(a0, &right) {
            Some(w) => {
                let is_outer = z.len() + a1.len() >= b1.len();
                routes.push((w, !is_outer, is_outer));
            }
            None => failure = Some((a0.clone(), right)),
        }
    }
    match routes.as_slice() {
        [] => {
            let (left, right) = failure.expect("at least one side is flagged");
            Ok(Verdict::Refuted(EmptyCause::DelayUndefined { left, right }))
        }
        [(w, i, o)] => Ok(Verdict::Found(WitnessSet::unique(w.clone(), *i, *o))),
        [(w1, i1, o1), (w2, i2, o2)] => {
            if w1 == w2 {
                Ok(Verdict::Found(WitnessSet::unique(
                    w1.clone(),
                    *i1 || *i2,
                    *o1 || *o2,
                )))
            } else {
                Err(WitnessError::Invariant(format!(
                    "inner and outer routes give different witnesses \"{w1}\" and \"{w2}\""
                )))
            }
        }
        _ => unreachable!("at most two routes"),
    }
}

fn star_wrap_verdict(we: &WitnessSet, prefix: &WordPair, suffix: &WordPair) -> Result<Verdict> {
    let c = suffix.concat(prefix);
    let redux = prefix.concat(suffix);
    match we {
        WitnessSet::Empty => Err(WitnessError::Invariant(
            "empty body sets must be handled with their cause".into(),
        )),
        WitnessSet::Universal => Ok(pair_verdict(&redux)),
        WitnessSet::Unique { word, inner, outer } => {
            let keep_inner = *inner && is_witness(word, &c, Side::Inner);
            let keep_outer = *outer && is_witness(word, &c, Side::Outer);
            if !keep_inner && !keep_outer {
                return Ok(Verdict::Refuted(EmptyCause::Rejected {
                    word: word.clone(),
                    inner: *inner,
                    outer: *outer,
                    pair: c,
                }));
            }
            wrap_unique(word, keep_inner, keep_outer, prefix, suffix)
        }
        WitnessSet::AllOf { root } => {
            if c.is_empty() {
                return Ok(Verdict::Found(we.clone()));
            }
            // `c` is a componentwise rotation of the redux, so one is
            // conjugate exactly when the other is.
            let Some(c_root) = c.primitive_root() else {
                return Ok(Verdict::Refuted(EmptyCause::NonConjugate { pair: redux }));
            };
            if &c_root == root {
                let redux_root = redux.primitive_root().ok_or_else(|| {
                    WitnessError::Invariant(format!("redux {redux} of a conjugate set has no root"))
                })?;
                return Ok(Verdict::Found(WitnessSet::all_of(redux_root)));
            }
            match two_root_verdict(root, &c_root)? {
                Verdict::Found(WitnessSet::Unique { word, inner, outer }) => {
                    wrap_unique(&word, inner, outer, prefix, suffix)
                }
                Verdict::Found(other) => Err(WitnessError::Invariant(format!(
                    "distinct roots {root} and {c_root} gave {other:?}"
                ))),
                Verdict::Refuted(_) => Ok(Verdict::Refuted(EmptyCause::NoCommonWitness {
                    first: root.clone(),
                    second: c,
                })),
            }
        }
    }
}

/// Witness set of `prefix · E* · suffix` given the witness set `we` of the
/// star body `E`.
pub fn star_wrap_witnesses(
    we: &WitnessSet,
    prefix: &WordPair,
    suffix: &WordPair,
) -> Result<WitnessSet> {
    if we.is_empty() {
        return Ok(WitnessSet::Empty);
    }
    star_wrap_verdict(we, prefix, suffix).map(Verdict::into_set)
}

/// The pair left after deleting every star.
pub fn redux_of(m: &SumfreeMonomial) -> WordPair {
    m.redux()
}

/// One `(prefix, body, suffix)` triple per star, keeping only that star.
pub fn singleton_reduxes(m: &SumfreeMonomial) -> Vec<(WordPair, SumfreeMonomial, WordPair)> {
    m.singleton_reduxes()
        .into_iter()
        .map(|(prefix, body, suffix)| (prefix, body.clone(), suffix))
        .collect()
}

fn monomial_verdict(m: &SumfreeMonomial) -> Result<Verdict> {
    let redux = m.redux();
    if m.is_pair() || !redux.is_conjugate() {
        return Ok(pair_verdict(&redux));
    }
    let mut acc = WitnessSet::Universal;
    for (prefix, body, suffix) in m.singleton_reduxes() {
        // A body and its star have the same common witnesses.
        let body_set = match monomial_verdict(body)? {
            Verdict::Found(set) => set,
            refuted => return Ok(refuted),
        };
        let wrapped = match star_wrap_verdict(&body_set, &prefix, &suffix)? {
            Verdict::Found(set) => set,
            refuted => return Ok(refuted),
        };
        acc = match intersect_verdict(&acc, &wrapped)? {
            Verdict::Found(set) => set,
            refuted => return Ok(refuted),
        };
    }
    Ok(Verdict::Found(acc))
}

/// Common witnesses of the set a sumfree monomial denotes.
pub fn monomial_witnesses(m: &SumfreeMonomial) -> Result<WitnessSet> {
    monomial_verdict(m).map(Verdict::into_set)
}

/// Like [`monomial_witnesses`], also returning the step that refuted the
/// monomial when its witness set is empty.
pub fn monomial_witnesses_explained(
    m: &SumfreeMonomial,
) -> Result<(WitnessSet, Option<EmptyCause>)> {
    let verdict = monomial_verdict(m)?;
    let cause = verdict.cause().cloned();
    Ok((verdict.into_set(), cause))
}

/// Every `side` witness of length at most `max_len`, shortest first.
pub fn enumerate_witnesses(w: &WitnessSet, side: Side, max_len: usize) -> Result<Vec<Word>> {
    let mut words = BTreeSet::new();
    match w {
        WitnessSet::Universal => return Err(WitnessError::UniversalNotEnumerable),
        WitnessSet::Empty => {}
        WitnessSet::Unique { word, .. } => {
            if membership(word, w, side) && word.len() <= max_len {
                words.insert(word.clone());
            }
        }
        WitnessSet::AllOf { root } => {
            for cut in cuts(&root.u, &root.v) {
                let (head, rest) = match side {
                    Side::Inner => (cut.x, cut.y),
                    Side::Outer => (cut.y, cut.x),
                };
                let unit = head.concat(&rest);
                let mut z = head;
                while z.len() <= max_len {
                    words.insert(z.clone());
                    if unit.is_empty() {
                        break;
                    }
                    z = unit.concat(&z);
                }
            }
        }
    }
    let mut out: Vec<Word> = words.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Snf(#[from] SnfError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOptions {
    pub max_snf_size: usize,
    /// Search for a non-conjugate member of each refuted summand.
    pub counterexample: bool,
    /// Bounds of that search; `max_unroll` caps the total number of star
    /// iterations.
    pub search: EnumBounds,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_snf_size: crate::expr::DEFAULT_SNF_SIZE_LIMIT,
            counterexample: false,
            search: EnumBounds {
                max_unroll: 8,
                max_len: 64,
                max_pairs: 200_000,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandReport {
    pub monomial: SumfreeMonomial,
    pub conjugate: bool,
    pub witnesses: WitnessSet,
    pub counterexample: Option<WordPair>,
    pub empty_cause: Option<EmptyCause>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub conjugate: bool,
    pub summands: Vec<SummandReport>,
}

impl ConjugacyReport {
    /// First counterexample found among the refuted summands.
    pub fn counterexample(&self) -> Option<&WordPair> {
        self.summands.iter().find_map(|s| s.counterexample.as_ref())
    }
}

/// Decides whether every pair of the relation is conjugate. Each summand of
/// the sumfree normal form is conjugate exactly when it has a common witness.
pub fn decide(e: &RationalExpr, options: &DecideOptions) -> Result<ConjugacyReport, DecideError> {
    let snf = to_snf_with_limit(e, options.max_snf_size)?;
    let mut summands = Vec::with_capacity(snf.summands.len());
    for summand in &snf.summands {
        let monomial = simplify_monomial(summand);
        let (witnesses, empty_cause) = monomial_witnesses_explained(&monomial)?;
        let conjugate = !witnesses.is_empty();
        let counterexample = if !conjugate && options.counterexample {
            oracle::find_counterexample(&monomial.to_expr(), &options.search)
        } else {
            None
        };
        summands.push(SummandReport {
            monomial,
            conjugate,
            witnesses,
            counterexample,
            empty_cause,
        });
    }
    Ok(ConjugacyReport {
        conjugate: summands.iter().all(|s| s.conjugate),
        summands,
    })
}
