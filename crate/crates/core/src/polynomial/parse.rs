//! Recursive-descent parser for univariate polynomial expressions.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = ("+" | "-") unary | power ;
//! power   = primary [ "^" integer ] ;
//! primary = integer [ "x" [ "^" integer ] ] | "x" | "(" expr ")" ;
//! ```
//!
//! `3x^2` is the only form of implicit multiplication. Division is allowed
//! only by nonzero constants, which is how fraction literals like `1/2` are
//! written. Everything is expanded exactly.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::RationalPoly;
use crate::rational::Rational;

/// Largest exponent accepted in `^` (keeps expansion bounded).
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not a polynomial at position {pos}: {msg}")]
    NonPolynomial { pos: usize, msg: String },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::NonPolynomial { pos, .. }
            | ParseError::DivisionByZero { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::X => "`x`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'x' | b'X' => Tok::X,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<RationalPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let (pos, _) = self.bump();
                    let rhs = self.unary()?;
                    let c = match rhs.as_constant() {
                        Some(c) => c,
                        None => {
                            return Err(ParseError::NonPolynomial {
                                pos,
                                msg: "division by a non-constant expression".into(),
                            })
                        }
                    };
                    if c.is_zero() {
                        return Err(ParseError::DivisionByZero { pos });
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalPoly, ParseError> {
        match self.peek() {
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.bump().1 {
            Tok::Int(n) => match n.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(e),
                _ => Err(ParseError::NonPolynomial {
                    pos,
                    msg: format!("exponent {n} exceeds the limit of {MAX_EXPONENT}"),
                }),
            },
            Tok::X => Err(ParseError::NonPolynomial {
                pos,
                msg: "exponent depends on x".into(),
            }),
            Tok::Minus => Err(ParseError::NonPolynomial {
                pos,
                msg: "negative exponent".into(),
            }),
            Tok::LParen => Err(ParseError::NonPolynomial {
                pos,
                msg: "exponent must be a nonnegative integer literal".into(),
            }),
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("expected exponent, found {}", other.describe()),
            }),
        }
    }

    fn power(&mut self) -> Result<RationalPoly, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            if *self.peek() == Tok::Caret {
                return self.syntax("chained exponents are ambiguous; use parentheses");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RationalPoly, ParseError> {
        let pos = self.pos();
        match self.bump().1 {
            Tok::Int(n) => {
                let c = RationalPoly::constant(Rational::from_integer(n));
                if *self.peek() == Tok::X {
                    // implicit multiplication: 3x or 3x^2
                    self.bump();
                    let mut e = 1;
                    if *self.peek() == Tok::Caret {
                        self.bump();
                        e = self.exponent()?;
                    }
                    return Ok(&c * &RationalPoly::x().pow(e));
                }
                Ok(c)
            }
            Tok::X => {
                if *self.peek() == Tok::X {
                    return self.syntax("implicit multiplication `xx` is not allowed; use `x*x` or `x^2`");
                }
                Ok(RationalPoly::x())
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Tok::RParen => {
                        self.bump();
                        Ok(inner)
                    }
                    other => {
                        let msg = format!("expected `)`, found {}", other.describe());
                        self.syntax(msg)
                    }
                }
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("expected a number, `x` or `(`, found {}", other.describe()),
            }),
        }
    }
}

/// Parse and expand a polynomial expression in `x`.
pub fn parse_poly(text: &str) -> Result<RationalPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let poly = p.expr()?;
    match p.peek() {
        Tok::End => Ok(poly),
        other => {
            let msg = format!("unexpected {}", other.describe());
            p.syntax(msg)
        }
    }
}
