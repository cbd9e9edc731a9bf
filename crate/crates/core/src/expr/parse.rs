use thiserror::Error;

use super::RationalExpr;
use crate::word::{Word, WordPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{column}: unknown symbol {symbol:?}")]
    UnknownSymbol {
        line: usize,
        column: usize,
        symbol: char,
    },
}

/// Parses the expression grammar. Products and sums come back flattened.
pub fn parse(text: &str) -> Result<RationalExpr, ParseError> {
    let mut parser = Parser::new(text)?;
    let expr = parser.expr()?;
    match parser.peek() {
        None => Ok(expr),
        Some(_) => Err(parser.unexpected("'+', a factor or end of input")),
    }
}

#[derive(Debug, Clone, Copy)]
struct Token {
    ch: char,
    line: usize,
    column: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let mut tokens = Vec::new();
        let (mut line, mut column) = (1, 1);
        for ch in text.chars() {
            if ch == '\n' {
                line += 1;
                column = 1;
                continue;
            }
            if !ch.is_whitespace() {
                if !(ch.is_ascii_lowercase() || "(),+*0".contains(ch)) {
                    return Err(ParseError::UnknownSymbol {
                        line,
                        column,
                        symbol: ch,
                    });
                }
                tokens.push(Token { ch, line, column });
            }
            column += 1;
        }
        Ok(Parser {
            tokens,
            pos: 0,
            end: (line, column),
        })
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).map(|t| t.ch)
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.tokens.get(self.pos + offset).map(|t| t.ch)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let (line, column, found) = match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.column, format!("'{}'", t.ch)),
            None => (self.end.0, self.end.1, "end of input".to_string()),
        };
        ParseError::Syntax {
            line,
            column,
            expected: expected.to_string(),
            found,
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{ch}'")))
        }
    }

    fn expr(&mut self) -> Result<RationalExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(RationalExpr::sum(terms))
    }

    fn term(&mut self) -> Result<RationalExpr, ParseError> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some('(') | Some('0')) {
            factors.push(self.factor()?);
        }
        Ok(RationalExpr::concat(factors))
    }

    fn factor(&mut self) -> Result<RationalExpr, ParseError> {
        let mut atom = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            atom = RationalExpr::star(atom);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<RationalExpr, ParseError> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(RationalExpr::EmptySet)
            }
            Some('(') => {
                let mut len = 0;
                while self
                    .peek_at(1 + len)
                    .is_some_and(|c| c.is_ascii_lowercase())
                {
                    len += 1;
                }
                if self.peek_at(1 + len) == Some(',') {
                    self.pair()
                } else if len > 0 {
                    self.pos += 1 + len;
                    Err(self.unexpected("','"))
                } else {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    Ok(inner)
                }
            }
            _ => Err(self.unexpected("'(' or '0'")),
        }
    }

    fn pair(&mut self) -> Result<RationalExpr, ParseError> {
        self.expect('(')?;
        let u = self.word();
        self.expect(',')?;
        let v = self.word();
        self.expect(')')?;
        Ok(RationalExpr::literal(WordPair::new(u, v)))
    }

    fn word(&mut self) -> Word {
        let mut symbols = Vec::new();
        while let Some(c) = self.peek().filter(char::is_ascii_lowercase) {
            symbols.push(c as u8);
            self.pos += 1;
        }
        Word::from_symbols(symbols)
    }
}
