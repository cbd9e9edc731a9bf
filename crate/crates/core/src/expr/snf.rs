//! Sumfree normal form.
//!
//! Every rational expression is a finite sum of sumfree monomials
//! `(α₀,β₀) B₁* (α₁,β₁) … Bₖ* (αₖ,βₖ)` whose star bodies are themselves
//! monomials. The conversion follows the structural induction: sums
//! concatenate summand lists, products distribute, and a starred sum
//! `(m₁ + … + mₖ)*` becomes `(m₁* … mₖ*)*`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::RationalExpr;
use crate::word::WordPair;

/// Default cap on the node count of a converted expression.
pub const DEFAULT_SNF_SIZE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnfError {
    #[error("sumfree normal form needs at least {estimate} nodes, over the limit of {limit}")]
    SizeLimitExceeded { estimate: u128, limit: usize },
}

/// One `Bᵢ* (αᵢ,βᵢ)` step of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub body: SumfreeMonomial,
    pub tail: WordPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumfreeMonomial {
    pub head: WordPair,
    pub segments: Vec<Segment>,
}

impl SumfreeMonomial {
    pub fn pair(head: WordPair) -> Self {
        SumfreeMonomial {
            head,
            segments: Vec::new(),
        }
    }

    /// `(ε,ε) body* (ε,ε)`.
    pub fn star_of(body: SumfreeMonomial) -> Self {
        SumfreeMonomial {
            head: WordPair::empty(),
            segments: vec![Segment {
                body,
                tail: WordPair::empty(),
            }],
        }
    }

    pub fn is_pair(&self) -> bool {
        self.segments.is_empty()
    }

    /// The last literal of the monomial.
    pub fn last_literal(&self) -> &WordPair {
        self.segments.last().map_or(&self.head, |s| &s.tail)
    }

    /// Product of two monomials; the touching literals are fused.
    pub fn concat(&self, other: &SumfreeMonomial) -> SumfreeMonomial {
        let mut out = self.clone();
        out.append(other);
        out
    }

    fn append(&mut self, other: &SumfreeMonomial) {
        let last = match self.segments.last_mut() {
            Some(segment) => &mut segment.tail,
            None => &mut self.head,
        };
        *last = last.concat(&other.head);
        self.segments.extend(other.segments.iter().cloned());
    }

    /// All literals concatenated, every star replaced by `(ε,ε)`.
    pub fn redux(&self) -> WordPair {
        self.segments
            .iter()
            .fold(self.head.clone(), |acc, s| acc.concat(&s.tail))
    }

    /// For each star, the literals before it fused into a prefix and the
    /// literals after it fused into a suffix.
    pub fn singleton_reduxes(&self) -> Vec<(WordPair, &SumfreeMonomial, WordPair)> {
        let mut prefixes = Vec::with_capacity(self.segments.len());
        let mut prefix = self.head.clone();
        for segment in &self.segments {
            prefixes.push(prefix.clone());
            prefix = prefix.concat(&segment.tail);
        }
        let mut suffix = WordPair::empty();
        let mut out = Vec::with_capacity(self.segments.len());
        for (segment, prefix) in self.segments.iter().zip(prefixes).rev() {
            suffix = segment.tail.concat(&suffix);
            out.push((prefix, &segment.body, suffix.clone()));
        }
        out.reverse();
        out
    }

    /// Node count of the monomial as a binary expression tree.
    pub fn size(&self) -> usize {
        let k = self.segments.len();
        4 * k + 1 + self.segments.iter().map(|s| s.body.size()).sum::<usize>()
    }

    pub fn star_height(&self) -> usize {
        self.segments
            .iter()
            .map(|s| 1 + s.body.star_height())
            .max()
            .unwrap_or(0)
    }

    /// True when the monomial denotes exactly `{(ε,ε)}`.
    pub fn is_identity_only(&self) -> bool {
        self.head.is_empty()
            && self
                .segments
                .iter()
                .all(|s| s.tail.is_empty() && s.body.is_identity_only())
    }

    /// Expression with the same language; `(ε,ε)` factors are dropped.
    pub fn to_expr(&self) -> RationalExpr {
        let mut factors = Vec::new();
        if !self.head.is_empty() {
            factors.push(RationalExpr::literal(self.head.clone()));
        }
        for segment in &self.segments {
            factors.push(RationalExpr::star(segment.body.to_expr()));
            if !segment.tail.is_empty() {
                factors.push(RationalExpr::literal(segment.tail.clone()));
            }
        }
        RationalExpr::concat(factors)
    }
}

impl fmt::Display for SumfreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub summands: Vec<SumfreeMonomial>,
    pub input_size: usize,
    pub output_size: usize,
}

impl SnfResult {
    /// The sum of the summands as a single expression.
    pub fn to_expr(&self) -> RationalExpr {
        RationalExpr::sum(self.summands.iter().map(SumfreeMonomial::to_expr))
    }
}

/// Node count of the right-comb tree holding `summands`: one `+` per
/// summand, the `∅` leaf, and the pendant monomials.
fn comb_size(summands: &[SumfreeMonomial]) -> usize {
    summands.len() + 1 + summands.iter().map(SumfreeMonomial::size).sum::<usize>()
}

pub fn to_snf(e: &RationalExpr) -> Result<SnfResult, SnfError> {
    to_snf_with_limit(e, DEFAULT_SNF_SIZE_LIMIT)
}

pub fn to_snf_with_limit(e: &RationalExpr, size_limit: usize) -> Result<SnfResult, SnfError> {
    let mut summands = convert(e, size_limit)?;
    let mut keyed: Vec<(String, SumfreeMonomial)> =
        summands.drain(..).map(|m| (m.to_string(), m)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.1 == b.1);
    let summands: Vec<_> = keyed.into_iter().map(|(_, m)| m).collect();
    let output_size = comb_size(&summands);
    Ok(SnfResult {
        summands,
        input_size: e.size(),
        output_size,
    })
}

fn check_limit(estimate: u128, limit: usize) -> Result<(), SnfError> {
    if estimate > limit as u128 {
        Err(SnfError::SizeLimitExceeded { estimate, limit })
    } else {
        Ok(())
    }
}

fn dedup(summands: Vec<SumfreeMonomial>) -> Vec<SumfreeMonomial> {
    let mut seen = HashSet::new();
    summands
        .into_iter()
        .filter(|m| seen.insert(m.clone()))
        .collect()
}

fn convert(e: &RationalExpr, limit: usize) -> Result<Vec<SumfreeMonomial>, SnfError> {
    let out = match e {
        RationalExpr::EmptySet => Vec::new(),
        RationalExpr::Literal(pair) => vec![SumfreeMonomial::pair(pair.clone())],
        RationalExpr::Sum(children) => {
            let mut out = Vec::new();
            for child in children {
                out.extend(convert(child, limit)?);
                check_limit(comb_size(&out) as u128, limit)?;
            }
            dedup(out)
        }
        RationalExpr::Concat(children) => {
            let mut acc = vec![SumfreeMonomial::pair(WordPair::empty())];
            for child in children {
                let right = convert(child, limit)?;
                let (n_left, n_right) = (acc.len() as u128, right.len() as u128);
                let left_nodes: u128 = acc.iter().map(|m| m.size() as u128).sum();
                let right_nodes: u128 = right.iter().map(|m| m.size() as u128).sum();
                check_limit(
                    n_left * right_nodes + n_right * left_nodes + n_left * n_right + 1,
                    limit,
                )?;
                acc = dedup(
                    acc.iter()
                        .flat_map(|l| right.iter().map(move |r| l.concat(r)))
                        .collect(),
                );
            }
            acc
        }
        RationalExpr::Star(inner) => {
            let mut body = convert(inner, limit)?;
            let starred = match body.len() {
                0 => SumfreeMonomial::pair(WordPair::empty()),
                1 => SumfreeMonomial::star_of(body.pop().unwrap()),
                _ => SumfreeMonomial::star_of(SumfreeMonomial {
                    head: WordPair::empty(),
                    segments: body
                        .into_iter()
                        .map(|m| Segment {
                            body: m,
                            tail: WordPair::empty(),
                        })
                        .collect(),
                }),
            };
            vec![starred]
        }
    };
    check_limit(comb_size(&out) as u128, limit)?;
    Ok(out)
}

/// Canonical form: star bodies that only generate `(ε,ε)` are removed and
/// the literals around them fused. Applied recursively to bodies.
pub fn simplify_monomial(m: &SumfreeMonomial) -> SumfreeMonomial {
    let mut out = SumfreeMonomial::pair(m.head.clone());
    for segment in &m.segments {
        let body = simplify_monomial(&segment.body);
        if body.is_identity_only() {
            out.append(&SumfreeMonomial::pair(segment.tail.clone()));
        } else {
            out.segments.push(Segment {
                body,
                tail: segment.tail.clone(),
            });
        }
    }
    out
}
