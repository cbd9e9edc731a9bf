//! Decide whether a rational relation over pairs of words is conjugate,
//! i.e. whether every related pair `(u, v)` is a cyclic shift of one
//! another.
//!
//! The relation is given as a rational expression ([`expr`]), converted to a
//! sum of sumfree monomials, and each monomial is checked for a common
//! witness: a word `z` with `uz = zv` for all of its pairs (or `zu = vz` for
//! all of them). A sumfree monomial is conjugate exactly when such a word
//! exists. The [`oracle`] module is an independent bounded brute-force
//! checker used to cross-validate verdicts and to extract counterexamples.

pub mod cli;
pub mod expr;
pub mod oracle;
pub mod witness;
pub mod word;

pub use expr::{parse, render, to_snf, RationalExpr, SumfreeMonomial};
pub use witness::{decide, ConjugacyReport, DecideOptions, WitnessSet};
pub use word::{Side, Word, WordPair};
