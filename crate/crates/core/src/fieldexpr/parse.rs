//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' '-'? digits)?
//! primary := number | variable | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! The parser builds raw nodes (no folding) so printing and re-parsing
//! reproduces the same tree.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{Coord, FieldExpr, Func, Node};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownIdentifier(String),
    MalformedNumber(String),
    TrailingInput,
    ChainedExponent,
    ExponentOutOfRange,
    TooDeep,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier `{id}`"),
            ParseErrorKind::MalformedNumber(s) => write!(f, "malformed number `{s}`"),
            ParseErrorKind::TrailingInput => write!(f, "unexpected trailing input"),
            ParseErrorKind::ChainedExponent => write!(f, "exponent must be a single integer literal"),
            ParseErrorKind::ExponentOutOfRange => write!(f, "exponent out of range"),
            ParseErrorKind::TooDeep => write!(f, "expression nested too deeply"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    depth: usize,
}

fn node(n: Node) -> FieldExpr {
    FieldExpr(Arc::new(n))
}

pub(super) fn parse(src: &str) -> Result<FieldExpr, ParseError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error(ParseErrorKind::TrailingInput));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, offset: self.pos }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn current_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn unexpected(&self) -> ParseError {
        match self.current_char() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<FieldExpr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = node(Node::Add(lhs, self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = node(Node::Sub(lhs, self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<FieldExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = node(Node::Mul(lhs, self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = node(Node::Div(lhs, self.unary()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<FieldExpr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(node(Node::Neg(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldExpr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error(ParseErrorKind::Expected("integer exponent")));
        }
        let exponent: i32 = self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError { kind: ParseErrorKind::ExponentOutOfRange, offset: start })?;
        if matches!(self.bytes.get(self.pos), Some(b'.') | Some(b'e') | Some(b'E')) {
            return Err(self.error(ParseErrorKind::Expected("integer exponent")));
        }
        if self.peek() == Some(b'^') {
            return Err(self.error(ParseErrorKind::ChainedExponent));
        }
        Ok(node(Node::Pow(base, exponent)))
    }

    fn primary(&mut self) -> Result<FieldExpr, ParseError> {
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(match self.peek() {
                        None => self.error(ParseErrorKind::Expected("`)`")),
                        Some(_) => self.unexpected(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(_) => Err(self.unexpected()),
        }
    }

    fn number(&mut self) -> Result<FieldExpr, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            let after_exp = self.pos > start && matches!(self.bytes[self.pos - 1], b'e' | b'E');
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || (after_exp && (c == b'+' || c == b'-')) {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(node(Node::Const(v))),
            _ => Err(ParseError { kind: ParseErrorKind::MalformedNumber(text.to_string()), offset: start }),
        }
    }

    fn identifier(&mut self) -> Result<FieldExpr, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if let Some(c) = Coord::from_name(name) {
            return Ok(node(Node::Var(c)));
        }
        let func = match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            _ => {
                return Err(ParseError { kind: ParseErrorKind::UnknownIdentifier(name.to_string()), offset: start });
            }
        };
        if self.peek() != Some(b'(') {
            return Err(self.error(ParseErrorKind::Expected("`(` after function name")));
        }
        self.pos += 1;
        let arg = self.expr()?;
        if self.peek() != Some(b')') {
            return Err(self.error(ParseErrorKind::Expected("`)`")));
        }
        self.pos += 1;
        Ok(node(Node::Call(func, arg)))
    }
}
