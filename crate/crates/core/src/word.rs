//! Words over the lowercase Latin alphabet and the combinatorics-on-words
//! primitives the decision procedure is built from: cyclic shifts, delays,
//! primitive roots, conjugacy, cuts and witnesses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol {symbol:?} at position {position} is not in the alphabet a-z")]
    InvalidSymbol { symbol: char, position: usize },
    #[error("primitivity is undefined on the empty word")]
    EmptyWord,
}

/// A finite word over `a..=z`. The empty word is a valid value.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(text: &str) -> Result<Self, WordError> {
        text.parse()
    }

    /// Builds a word from raw symbols. Symbols must already be in `a..=z`.
    pub(crate) fn from_symbols(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(u8::is_ascii_lowercase));
        Word(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_str(&self) -> &str {
        // Only ASCII lowercase letters are ever stored.
        std::str::from_utf8(&self.0).expect("words are ASCII")
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// Symbol at `i` of the infinite periodic word `self^ω`.
    fn omega_at(&self, i: usize) -> u8 {
        self.0[i % self.0.len()]
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.chars()
            .enumerate()
            .map(|(position, symbol)| {
                if symbol.is_ascii_lowercase() {
                    Ok(symbol as u8)
                } else {
                    Err(WordError::InvalidSymbol { symbol, position })
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An element `(u, v)` of the product monoid of words.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordPair {
    pub u: Word,
    pub v: Word,
}

impl WordPair {
    pub fn new(u: Word, v: Word) -> Self {
        WordPair { u, v }
    }

    pub fn parse(u: &str, v: &str) -> Result<Self, WordError> {
        Ok(WordPair::new(u.parse()?, v.parse()?))
    }

    pub fn empty() -> Self {
        WordPair::default()
    }

    /// True for the identity pair `(ε, ε)`.
    pub fn is_empty(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }

    /// Componentwise concatenation.
    pub fn concat(&self, other: &WordPair) -> WordPair {
        WordPair::new(self.u.concat(&other.u), self.v.concat(&other.v))
    }

    pub fn pow(&self, n: usize) -> WordPair {
        WordPair::new(self.u.pow(n), self.v.pow(n))
    }

    pub fn reversed(&self) -> WordPair {
        WordPair::new(reverse(&self.u), reverse(&self.v))
    }

    /// Longer of the two component lengths.
    pub fn max_len(&self) -> usize {
        self.u.len().max(self.v.len())
    }

    pub fn is_conjugate(&self) -> bool {
        is_conjugate(&self.u, &self.v)
    }

    /// Componentwise primitive roots of a conjugate pair of nonempty words.
    pub fn primitive_root(&self) -> Option<WordPair> {
        if self.u.is_empty() || self.v.is_empty() || !self.is_conjugate() {
            return None;
        }
        let (ru, _) = primitive_root(&self.u).ok()?;
        let (rv, _) = primitive_root(&self.v).ok()?;
        Some(WordPair::new(ru, rv))
    }
}

impl fmt::Display for WordPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Debug for WordPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.u, self.v)
    }
}

impl Serialize for WordPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.u, &self.v).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WordPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (u, v) = <(Word, Word)>::deserialize(deserializer)?;
        Ok(WordPair::new(u, v))
    }
}

/// A cut `(x, y)` of a conjugate pair `(u, v)`: `u = xy` and `v = yx`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    pub x: Word,
    pub y: Word,
}

impl Cut {
    /// A cut is empty when one of its components is.
    pub fn is_empty(&self) -> bool {
        self.x.is_empty() || self.y.is_empty()
    }

    /// The pair this cut decomposes.
    pub fn pair(&self) -> WordPair {
        WordPair::new(self.x.concat(&self.y), self.y.concat(&self.x))
    }
}

/// Which side of the pair a witness sits on: inner `uz = zv`, outer `zu = vz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Inner, Side::Outer];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Inner => f.write_str("inner"),
            Side::Outer => f.write_str("outer"),
        }
    }
}

/// `w` rotated left by `i` positions; `i` is taken modulo `|w|`.
pub fn cyclic_shift(w: &Word, i: usize) -> Word {
    if w.is_empty() {
        return Word::empty();
    }
    let mut symbols = w.0.clone();
    symbols.rotate_left(i % w.len());
    Word(symbols)
}

pub fn reverse(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}

/// Left quotient of the longer word by the shorter one, when one is a
/// prefix of the other.
pub fn prefix_delay(u: &Word, v: &Word) -> Option<Word> {
    if u.is_prefix_of(v) {
        Some(v.slice(u.len()..v.len()))
    } else if v.is_prefix_of(u) {
        Some(u.slice(v.len()..u.len()))
    } else {
        None
    }
}

/// Right quotient of the longer word by the shorter one, when one is a
/// suffix of the other.
pub fn suffix_delay(u: &Word, v: &Word) -> Option<Word> {
    if u.is_suffix_of(v) {
        Some(v.slice(0..v.len() - u.len()))
    } else if v.is_suffix_of(u) {
        Some(u.slice(0..u.len() - v.len()))
    } else {
        None
    }
}

pub fn is_primitive(w: &Word) -> Result<bool, WordError> {
    Ok(primitive_root(w)?.1 == 1)
}

/// The primitive root `r` and exponent `n` with `r^n = w`.
///
/// The smallest positive rotation fixing `w` is its period as a necklace,
/// and that period always divides `|w|`.
pub fn primitive_root(w: &Word) -> Result<(Word, usize), WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let n = w.len();
    let period = (1..=n)
        .find(|&i| (0..n).all(|j| w.0[j] == w.0[(j + i) % n]))
        .unwrap_or(n);
    debug_assert_eq!(n % period, 0);
    Ok((w.slice(0..period), n / period))
}

/// Whether `v` is a cyclic shift of `u`.
pub fn is_conjugate(u: &Word, v: &Word) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    (0..u.len()).any(|i| rotation_matches(u, v, i))
}

fn rotation_matches(u: &Word, v: &Word, i: usize) -> bool {
    let n = u.len();
    (0..n).all(|j| u.0[(i + j) % n] == v.0[j])
}

/// All cuts of `(u, v)` ordered by `|x|`. Empty iff the pair is not
/// conjugate. `(ε, ε)` has the single cut `(ε, ε)`.
pub fn cuts(u: &Word, v: &Word) -> Vec<Cut> {
    if u.len() != v.len() {
        return Vec::new();
    }
    let n = u.len();
    (0..=n)
        .filter(|&i| (i == n && u == v) || (i < n && rotation_matches(u, v, i)))
        .map(|i| Cut {
            x: u.slice(0..i),
            y: u.slice(i..n),
        })
        .collect()
}

/// `uz = zv` for inner witnesses, `zu = vz` for outer ones.
pub fn is_witness(z: &Word, p: &WordPair, side: Side) -> bool {
    if p.u.len() != p.v.len() {
        return false;
    }
    let (left, right) = match side {
        Side::Inner => (p.u.concat(z), z.concat(&p.v)),
        Side::Outer => (z.concat(&p.u), p.v.concat(z)),
    };
    left == right
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Fine–Wilf test: `u^ω` and `v^ω` agree on their first
/// `|u| + |v| - gcd(|u|, |v|)` symbols iff `u` and `v` share a primitive root.
pub fn fine_wilf_same_root(u: &Word, v: &Word) -> Result<bool, WordError> {
    if u.is_empty() || v.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let bound = u.len() + v.len() - gcd(u.len(), v.len());
    Ok((0..bound).all(|i| u.omega_at(i) == v.omega_at(i)))
}
