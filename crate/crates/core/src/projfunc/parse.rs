//! Recursive-descent parser for rational-function text.
//!
//! Accepted grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" uint)?
//! atom   := "x" | "w" | uint | "(" expr ")"
//! ```
//!
//! `w` is the generator of an extension field over its prime field. Integer
//! literals are reduced modulo the characteristic.

use thiserror::Error;

use super::{ProjError, RatFunc};
use crate::gf::Field;
use crate::polyring::{Poly, PolyRing};
use crate::ring::Ring;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Unreduced `num / den`.
#[derive(Clone)]
struct Frac {
    num: Poly,
    den: Poly,
}

struct Parser<'a> {
    src: Vec<(usize, char)>,
    at: usize,
    ring: PolyRing,
    field: &'a Field,
}

pub fn parse_ratfunc(text: &str, field: &Field) -> Result<RatFunc, ParseError> {
    let mut p = Parser {
        src: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        at: 0,
        ring: PolyRing::new(field),
        field,
    };
    if p.src.is_empty() {
        return Err(ParseError { pos: 0, msg: "empty expression".into() });
    }
    let value = p.expr()?;
    if p.at < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.at].1)));
    }
    RatFunc::new(field, value.num, value.den).map_err(|e| match e {
        ProjError::ZeroDenominator => ParseError { pos: 0, msg: "division by zero".into() },
        other => ParseError { pos: 0, msg: other.to_string() },
    })
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.src.get(self.at).map_or_else(|| self.src.last().map_or(0, |(i, _)| i + 1), |(i, _)| *i)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos(), msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.at).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = add(&self.ring, &acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                let neg = Frac { num: self.ring.neg(&t.num), den: t.den };
                acc = add(&self.ring, &acc, &neg);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = mul(&self.ring, &acc, &t);
            } else if self.peek() == Some('/') {
                let pos = self.pos();
                self.at += 1;
                let t = self.unary()?;
                if t.num.is_zero() {
                    return Err(ParseError { pos, msg: "division by zero".into() });
                }
                acc = mul(&self.ring, &acc, &Frac { num: t.den, den: t.num });
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(Frac { num: self.ring.neg(&v.num), den: v.den });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Frac, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let e = self.uint()?.ok_or_else(|| self.error("expected an exponent"))?;
        let e = e.parse::<u64>().ok().filter(|&e| e <= MAX_EXPONENT).ok_or(ParseError {
            pos,
            msg: format!("exponent larger than {MAX_EXPONENT}"),
        })?;
        let r = &self.ring;
        Ok(Frac { num: Ring::pow(r, &base.num, e), den: Ring::pow(r, &base.den, e) })
    }

    fn atom(&mut self) -> Result<Frac, ParseError> {
        let one = self.ring.one();
        match self.peek() {
            Some('x') => {
                self.at += 1;
                Ok(Frac { num: self.ring.x(), den: one })
            }
            Some('w') => {
                let g = self
                    .field
                    .generator()
                    .ok_or_else(|| self.error("'w' is only defined in extension fields"))?;
                self.at += 1;
                Ok(Frac { num: self.ring.constant(g), den: one })
            }
            Some('(') => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.uint()?.unwrap();
                let p = self.field.characteristic() as u64;
                let v = digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Frac { num: self.ring.constant(self.field.from_int(v as i64)), den: one })
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<Option<String>, ParseError> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        Ok((self.at > start).then(|| self.src[start..self.at].iter().map(|&(_, c)| c).collect()))
    }
}

fn add(r: &PolyRing, a: &Frac, b: &Frac) -> Frac {
    if a.den == b.den {
        return Frac { num: r.add(&a.num, &b.num), den: a.den.clone() };
    }
    Frac {
        num: r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den)),
        den: r.mul(&a.den, &b.den),
    }
}

fn mul(r: &PolyRing, a: &Frac, b: &Frac) -> Frac {
    Frac { num: r.mul(&a.num, &b.num), den: r.mul(&a.den, &b.den) }
}
