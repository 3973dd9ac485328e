use std::fmt;

use thiserror::Error;

use super::KnotExpr;
use crate::seifert::validate_seifert;
use crate::twobridge::{cf_to_fraction, TwoBridgeFraction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    InvalidParameter(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn syntax<T>(&self, at: usize, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            position: at,
            kind: ParseErrorKind::Syntax(msg.into()),
        })
    }

    fn invalid<T>(&self, at: usize, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            position: at,
            kind: ParseErrorKind::InvalidParameter(msg.into()),
        })
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => self.syntax(self.pos, format!("expected '{c}', found '{x}'")),
            None => self.syntax(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        let bytes = self.src.as_bytes();
        if bytes.get(end) == Some(&b'-') {
            end += 1;
        }
        while bytes.get(end).is_some_and(|b| b.is_ascii_digit()) {
            end += 1;
        }
        let text = &self.src[start..end];
        if text.is_empty() || text == "-" {
            return self.syntax(start, "expected an integer");
        }
        match text.parse() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.invalid(start, format!("integer {text} out of range")),
        }
    }

    fn int_list(&mut self, close: char) -> PResult<Vec<i64>> {
        let mut out = vec![self.int()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.int()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn expr(&mut self) -> PResult<KnotExpr> {
        let mut acc = self.atom()?;
        while self.peek() == Some('#') {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = KnotExpr::Sum(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<KnotExpr> {
        let start = match self.peek() {
            None => return self.syntax(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(KnotExpr::Mirror(Box::new(self.atom()?)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                let Some(name) = self.ident() else {
                    let c = self.peek().unwrap();
                    return self.syntax(start, format!("unexpected '{c}'"));
                };
                let is_call = self.peek() == Some('(');
                match (name, is_call) {
                    ("P", true) => self.pretzel(start),
                    ("TB", true) => self.two_bridge(start),
                    ("cable", true) => self.cable(start),
                    ("seifert", true) => self.seifert(start),
                    _ => Ok(KnotExpr::Named(name.to_string())),
                }
            }
        }
    }

    fn pretzel(&mut self, start: usize) -> PResult<KnotExpr> {
        self.expect('(')?;
        let args = self.int_list(')')?;
        let [p, q, r] = args[..] else {
            return self.syntax(start, format!("P takes 3 arguments, got {}", args.len()));
        };
        if [p, q, r].iter().any(|x| x % 2 == 0) {
            return self.invalid(start, "pretzel parameters must all be odd");
        }
        Ok(KnotExpr::Pretzel(p, q, r))
    }

    fn two_bridge(&mut self, start: usize) -> PResult<KnotExpr> {
        self.expect('(')?;
        let terms = self.int_list(')')?;
        let fraction = cf_to_fraction(&terms).and_then(|r| TwoBridgeFraction::from_rational(&r));
        if let Err(e) = fraction {
            return self.invalid(start, format!("TB{terms:?}: {e}"));
        }
        Ok(KnotExpr::TwoBridge(terms))
    }

    fn cable(&mut self, start: usize) -> PResult<KnotExpr> {
        self.expect('(')?;
        let n = self.int()?;
        if n < 2 || n > u32::MAX as i64 {
            return self.invalid(
                start,
                format!("cable parameter must be at least 2, got {n}"),
            );
        }
        self.expect(',')?;
        let inner = self.expr()?;
        self.expect(')')?;
        Ok(KnotExpr::Cable(n as u32, Box::new(inner)))
    }

    fn seifert(&mut self, start: usize) -> PResult<KnotExpr> {
        self.expect('(')?;
        self.expect('[')?;
        let mut rows = Vec::new();
        if self.peek() != Some(']') {
            loop {
                self.expect('[')?;
                if self.peek() == Some(']') {
                    self.pos += 1;
                    rows.push(vec![]);
                } else {
                    rows.push(self.int_list(']')?);
                }
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(']')?;
        self.expect(')')?;
        match validate_seifert(&rows) {
            Ok(m) => Ok(KnotExpr::SeifertLiteral(m)),
            Err(e) => self.invalid(start, e.to_string()),
        }
    }
}

/// Parses a knot expression. Names are not resolved here; see [`super::evaluate`].
pub fn parse(text: &str) -> Result<KnotExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.syntax(p.pos, format!("unexpected '{c}' after expression"));
    }
    Ok(e)
}
