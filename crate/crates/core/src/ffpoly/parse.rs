//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//! ```
//!
//! Integer literals are reduced modulo p while they are read.

use core::fmt;

use super::field::PrimeField;
use super::monomial::{Monomial, Var};
use super::poly::SparsePolynomial;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownVariable(char),
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(
                    f,
                    "unexpected character '{c}' at position {}",
                    self.position
                )
            }
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownVariable(c) => {
                write!(f, "unknown variable '{c}' at position {}", self.position)
            }
            ParseErrorKind::ExponentTooLarge => {
                write!(f, "exponent too large at position {}", self.position)
            }
        }
    }
}

impl core::error::Error for ParseError {}

pub fn parse_polynomial(text: &str, field: PrimeField) -> Result<SparsePolynomial, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
    };
    let p = parser.expr()?;
    match parser.peek() {
        None => Ok(p),
        Some(_) => Err(parser.unexpected_here()),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: PrimeField,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected_here(&self) -> ParseError {
        // Report the full character, not a UTF-8 fragment.
        let ch = core::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or(self.src[self.pos] as char);
        self.error(ParseErrorKind::UnexpectedChar(ch))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SparsePolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePolynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePolynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePolynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            let e = self.exponent()?;
            if e > MAX_EXPONENT {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::ExponentTooLarge,
                });
            }
            // Pure monomials are raised exponent-wise, avoiding repeated products.
            if base.num_terms() == 1 {
                let (m, c) = base.leading_term().expect("one term");
                return Ok(SparsePolynomial::term(c.pow(e as u64), m.pow(e as i32)));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            Some(c) => return Err(self.error(ParseErrorKind::UnexpectedChar(c as char))),
            None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
        let mut e: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            e = e.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        Ok(e.min(u32::MAX as u64) as u32)
    }

    fn atom(&mut self) -> Result<SparsePolynomial, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.error(ParseErrorKind::UnexpectedEnd));
        };
        match c {
            b'0'..=b'9' => {
                let p = self.field.modulus();
                let mut v: u64 = 0;
                while let Some(&d) = self.src.get(self.pos) {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    v = (v * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(SparsePolynomial::constant(crate::ffpoly::Fp::new(
                    self.field, v,
                )))
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c as char))),
                    None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
                }
            }
            c if c.is_ascii_alphabetic() => match Var::from_char(c as char) {
                Some(v) => {
                    self.pos += 1;
                    Ok(SparsePolynomial::monomial(self.field, Monomial::var(v, 1)))
                }
                None => Err(self.error(ParseErrorKind::UnknownVariable(c as char))),
            },
            _ => Err(self.unexpected_here()),
        }
    }
}
