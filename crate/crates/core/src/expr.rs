//! Arithmetic expression grammar shared by the form parser and the rewrite engine.
//!
//! Grammar (juxtaposition is multiplication):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! atom   := number | ident ('[' int ']')* | '(' expr ')'
//! ```
//! Numbers are integers or finite decimals and are read exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::poly::{rational_string, Rational};

/// Parsed arithmetic expression.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Expr {
    Num {
        #[serde(with = "rational_string")]
        value: Rational,
    },
    Sym {
        name: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        indices: Vec<u32>,
    },
    Neg {
        arg: Box<Expr>,
    },
    Add {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Sub {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Mul {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Div {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Pow {
        base: Box<Expr>,
        exp: i64,
    },
}

/// Parse failure with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Evaluation of an [`Expr`] into some algebra.
pub trait Interpret {
    type Value;
    type Error;
    fn number(&mut self, value: &Rational) -> Result<Self::Value, Self::Error>;
    fn symbol(&mut self, name: &str, indices: &[u32]) -> Result<Self::Value, Self::Error>;
    fn neg(&mut self, a: Self::Value) -> Result<Self::Value, Self::Error>;
    fn add(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn sub(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn div(&mut self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn pow(&mut self, a: Self::Value, exp: i64) -> Result<Self::Value, Self::Error>;
}

impl Expr {
    pub fn num(value: Rational) -> Expr {
        Expr::Num { value }
    }

    pub fn sym(name: &str, indices: &[u32]) -> Expr {
        Expr::Sym {
            name: name.to_string(),
            indices: indices.to_vec(),
        }
    }

    pub fn interpret<I: Interpret>(&self, it: &mut I) -> Result<I::Value, I::Error> {
        match self {
            Expr::Num { value } => it.number(value),
            Expr::Sym { name, indices } => it.symbol(name, indices),
            Expr::Neg { arg } => {
                let a = arg.interpret(it)?;
                it.neg(a)
            }
            Expr::Add { lhs, rhs } => {
                let (a, b) = (lhs.interpret(it)?, rhs.interpret(it)?);
                it.add(a, b)
            }
            Expr::Sub { lhs, rhs } => {
                let (a, b) = (lhs.interpret(it)?, rhs.interpret(it)?);
                it.sub(a, b)
            }
            Expr::Mul { lhs, rhs } => {
                let (a, b) = (lhs.interpret(it)?, rhs.interpret(it)?);
                it.mul(a, b)
            }
            Expr::Div { lhs, rhs } => {
                let (a, b) = (lhs.interpret(it)?, rhs.interpret(it)?);
                it.div(a, b)
            }
            Expr::Pow { base, exp } => {
                let a = base.interpret(it)?;
                it.pow(a, *exp)
            }
        }
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add {
            lhs: Box::new(self),
            rhs: Box::new(rhs),
        }
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub {
            lhs: Box::new(self),
            rhs: Box::new(rhs),
        }
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul {
            lhs: Box::new(self),
            rhs: Box::new(rhs),
        }
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div {
            lhs: Box::new(self),
            rhs: Box::new(rhs),
        }
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg {
            arg: Box::new(self),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &Expr) -> u8 {
            match e {
                Expr::Add { .. } | Expr::Sub { .. } => 1,
                Expr::Mul { .. } | Expr::Div { .. } => 2,
                Expr::Neg { .. } => 3,
                Expr::Pow { .. } => 4,
                Expr::Num { value } if !value.is_integer() || value < &Rational::zero() => 2,
                Expr::Num { .. } | Expr::Sym { .. } => 5,
            }
        }
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if prec(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num { value } => write!(f, "{value}"),
            Expr::Sym { name, indices } => {
                write!(f, "{name}")?;
                for i in indices {
                    write!(f, "[{i}]")?;
                }
                Ok(())
            }
            Expr::Neg { arg } => {
                write!(f, "-")?;
                child(f, arg, 4)
            }
            Expr::Add { lhs, rhs } => {
                child(f, lhs, 1)?;
                write!(f, " + ")?;
                child(f, rhs, 2)
            }
            Expr::Sub { lhs, rhs } => {
                child(f, lhs, 1)?;
                write!(f, " - ")?;
                child(f, rhs, 2)
            }
            Expr::Mul { lhs, rhs } => {
                child(f, lhs, 2)?;
                write!(f, "*")?;
                child(f, rhs, 3)
            }
            Expr::Div { lhs, rhs } => {
                child(f, lhs, 2)?;
                write!(f, "/")?;
                child(f, rhs, 3)
            }
            Expr::Pow { base, exp } => {
                child(f, base, 5)?;
                if *exp < 0 {
                    write!(f, "^({exp})")
                } else {
                    write!(f, "^{exp}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = src[pos..]
            .chars()
            .next()
            .expect("position is on a char boundary");
        let start = pos;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
                pos += 1;
            }
            let text = &src[start..pos];
            let value = parse_decimal(text).ok_or_else(|| ParseError {
                offset: start,
                message: format!("malformed number '{text}'"),
            })?;
            out.push((start, Tok::Num(value)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push((start, Tok::Ident(src[start..pos].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            _ => {
                return Err(ParseError {
                    offset: start,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        pos += c.len_utf8();
        out.push((start, tok));
    }
    Ok(out)
}

/// Parses an unsigned integer or finite decimal exactly.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Some(Rational::new(numer, denom))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {tok:?}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = lhs + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = lhs * self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = lhs / self.unary()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    lhs = lhs * self.power()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let exp = match self.peek() {
            Some(Tok::Num(v)) if v.is_integer() => {
                let e: i64 = v
                    .to_integer()
                    .try_into()
                    .or_else(|_| self.err("exponent out of range"))?;
                self.pos += 1;
                e
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(Expr::Pow {
            base: Box::new(base),
            exp: if negative { -exp } else { exp },
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::num(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut indices = Vec::new();
                while self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Num(v)) if v.is_integer() && v >= &Rational::zero() => {
                            let i: u32 = v
                                .to_integer()
                                .try_into()
                                .or_else(|_| self.err("index out of range"))?;
                            indices.push(i);
                            self.pos += 1;
                        }
                        _ => return self.err("expected non-negative integer index"),
                    }
                    self.expect(Tok::RBracket)?;
                }
                Ok(Expr::Sym { name, indices })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a text expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Integer power by repeated squaring for any multiplicative value.
pub(crate) fn pow_by_squaring<T: Clone>(
    base: &T,
    mut exp: u64,
    one: T,
    mul: impl Fn(&T, &T) -> T,
) -> T {
    let mut acc = one;
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(&acc, &b);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul(&b, &b);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.25"), Some(r(1, 4)));
        assert_eq!(parse_decimal("12"), Some(r(12, 1)));
        assert_eq!(parse_decimal("1.2.3"), None);
    }

    #[test]
    fn precedence_and_implicit_product() {
        let e = parse("-x^2 + 3/2 y*z").unwrap();
        assert_eq!(e.to_string(), "-x^2 + 3/2*y*z");
        let e = parse("al[1][2]^(-1) * (a1 - a2)").unwrap();
        assert_eq!(e.to_string(), "al[1][2]^(-1)*(a1 - a2)");
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "a1^2 + a2^2 - (a3 - 1)/(2*a1)",
            "-(x + y)^3*z",
            "2 x^2 y - 1/3",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }

    #[test]
    fn json_ast_round_trips() {
        let e = parse("3/4*al[2][1]*ainf - a1^3").unwrap();
        let json = serde_json::to_string(&e).unwrap();
        let back: Expr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("a1 +").is_err());
        assert!(parse("a1 $ a2").is_err());
        assert!(parse("x^y").is_err());
        assert!(parse("(a1").is_err());
    }

    #[test]
    fn power_by_squaring_matches_product() {
        let p = pow_by_squaring(&3i64, 13, 1, |a, b| a * b);
        assert_eq!(p, 3i64.pow(13));
        assert_eq!(
            pow_by_squaring(&r(2, 3), 0, Rational::one(), |a, b| a * b),
            Rational::one()
        );
    }
}
