//! Rational expressions over word pairs.
//!
//! Text grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor factor*
//! factor := atom '*'*
//! atom   := pair | '(' expr ')' | '0'
//! pair   := '(' word ',' word ')'
//! word   := [a-z]*
//! ```
//!
//! `0` denotes the empty set and `(,)` the pair of empty words.

mod parse;
mod snf;

use std::fmt;

use crate::word::WordPair;

pub use parse::{parse, ParseError};
pub use snf::{
    simplify_monomial, to_snf, to_snf_with_limit, Segment, SnfError, SnfResult, SumfreeMonomial,
    DEFAULT_SNF_SIZE_LIMIT,
};

/// Expression tree. `Concat` and `Sum` always hold at least two children
/// and never directly contain a node of their own kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RationalExpr {
    EmptySet,
    Literal(WordPair),
    Concat(Vec<RationalExpr>),
    Sum(Vec<RationalExpr>),
    Star(Box<RationalExpr>),
}

impl RationalExpr {
    pub fn literal(pair: WordPair) -> Self {
        RationalExpr::Literal(pair)
    }

    pub fn star(inner: RationalExpr) -> Self {
        RationalExpr::Star(Box::new(inner))
    }

    /// Flattening product constructor.
    pub fn concat(children: impl IntoIterator<Item = RationalExpr>) -> Self {
        let mut flat = Vec::new();
        for child in children {
            match child {
                RationalExpr::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => RationalExpr::Literal(WordPair::empty()),
            1 => flat.pop().unwrap(),
            _ => RationalExpr::Concat(flat),
        }
    }

    /// Flattening sum constructor. The empty sum is the empty set.
    pub fn sum(children: impl IntoIterator<Item = RationalExpr>) -> Self {
        let mut flat = Vec::new();
        for child in children {
            match child {
                RationalExpr::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => RationalExpr::EmptySet,
            1 => flat.pop().unwrap(),
            _ => RationalExpr::Sum(flat),
        }
    }

    /// Node count of the equivalent binary expression tree: an n-ary
    /// product or sum stands for `n - 1` binary nodes.
    pub fn size(&self) -> usize {
        match self {
            RationalExpr::EmptySet | RationalExpr::Literal(_) => 1,
            RationalExpr::Concat(children) | RationalExpr::Sum(children) => {
                children.len() - 1 + children.iter().map(RationalExpr::size).sum::<usize>()
            }
            RationalExpr::Star(inner) => 1 + inner.size(),
        }
    }

    pub fn star_count(&self) -> usize {
        match self {
            RationalExpr::EmptySet | RationalExpr::Literal(_) => 0,
            RationalExpr::Concat(children) | RationalExpr::Sum(children) => {
                children.iter().map(RationalExpr::star_count).sum()
            }
            RationalExpr::Star(inner) => 1 + inner.star_count(),
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn precedence(&self) -> u8 {
        match self {
            RationalExpr::Sum(_) => 0,
            RationalExpr::Concat(_) => 1,
            RationalExpr::Star(_) | RationalExpr::Literal(_) | RationalExpr::EmptySet => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_precedence: u8) -> fmt::Result {
        if self.precedence() < min_precedence {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            RationalExpr::EmptySet => f.write_str("0"),
            RationalExpr::Literal(pair) => write!(f, "{pair}"),
            RationalExpr::Concat(children) => {
                children.iter().try_for_each(|child| child.fmt_at(f, 2))
            }
            RationalExpr::Sum(children) => {
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    child.fmt_at(f, 1)?;
                }
                Ok(())
            }
            RationalExpr::Star(inner) => {
                inner.fmt_at(f, 2)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Renders an expression in the parser's grammar.
pub fn render(e: &RationalExpr) -> String {
    e.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(u: &str, v: &str) -> RationalExpr {
        RationalExpr::literal(WordPair::parse(u, v).unwrap())
    }

    #[test]
    fn renders_examples() {
        assert_eq!(render(&RationalExpr::star(lit("ab", "ba"))), "(ab,ba)*");
        assert_eq!(render(&lit("", "")), "(,)");
        assert_eq!(
            render(&RationalExpr::sum([lit("a", "a"), lit("b", "b")])),
            "(a,a)+(b,b)"
        );
        assert_eq!(
            render(&RationalExpr::concat([
                RationalExpr::sum([lit("a", "a"), lit("b", "b")]),
                lit("c", "c")
            ])),
            "((a,a)+(b,b))(c,c)"
        );
        assert_eq!(
            render(&RationalExpr::star(RationalExpr::star(
                RationalExpr::EmptySet
            ))),
            "0**"
        );
    }

    #[test]
    fn sizes_count_binary_nodes() {
        assert_eq!(lit("a", "b").size(), 1);
        assert_eq!(
            RationalExpr::concat([lit("a", "a"), lit("b", "b"), lit("c", "c")]).size(),
            5
        );
        assert_eq!(RationalExpr::star(lit("a", "a")).size(), 2);
    }

    #[test]
    fn constructors_flatten() {
        let nested = RationalExpr::concat([
            RationalExpr::concat([lit("a", "a"), lit("b", "b")]),
            lit("c", "c"),
        ]);
        assert!(matches!(nested, RationalExpr::Concat(ref c) if c.len() == 3));
        assert_eq!(RationalExpr::sum([]), RationalExpr::EmptySet);
    }
}
