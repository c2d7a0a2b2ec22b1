//! Text grammar for polynomials: integer and `a/b` literals, variables,
//! `+ - * / ^` and parentheses. Division is only by scalars; negative
//! exponents only where the target ring has the inverse.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::poly::Poly;
use crate::scalar::{Scalar, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// A ring that expressions can be evaluated into.
pub trait ExprTarget: Sized + Clone {
    fn constant(c: Q) -> Self;
    /// `None` if the name is not a variable of this ring.
    fn variable(name: &str) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: i64) -> Result<Self, String>;
    fn div(&self, rhs: &Self) -> Result<Self, String>;
}

impl<S: Scalar> ExprTarget for Poly<S> {
    fn constant(c: Q) -> Self {
        Poly::constant(S::from_rational(&c))
    }

    fn variable(name: &str) -> Option<Self> {
        match name {
            "u" => Some(Poly::x()),
            "p" => S::parameter().map(Poly::constant),
            _ => None,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn pow(&self, e: i64) -> Result<Self, String> {
        if e >= 0 {
            return Ok(Poly::pow(self, e as u32));
        }
        match self.degree() {
            Some(0) => Ok(Poly::constant(self.lc().pow(e))),
            _ => Err("negative exponent on a non-scalar polynomial".into()),
        }
    }

    fn div(&self, rhs: &Self) -> Result<Self, String> {
        match rhs.degree() {
            Some(0) => Ok(self.scale(&rhs.lc().inv())),
            None => Err("division by zero".into()),
            _ => Err("division by a non-scalar".into()),
        }
    }
}

impl<S: Scalar> ExprTarget for LaurentPoly<S> {
    fn constant(c: Q) -> Self {
        LaurentPoly::monomial(S::from_rational(&c), 0)
    }

    fn variable(name: &str) -> Option<Self> {
        match name {
            "u" => Some(LaurentPoly::monomial(S::one(), 1)),
            "p" => S::parameter().map(|p| LaurentPoly::monomial(p, 0)),
            _ => None,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn pow(&self, e: i64) -> Result<Self, String> {
        if e >= 0 {
            let mut acc = LaurentPoly::one();
            for _ in 0..e {
                acc = &acc * self;
            }
            return Ok(acc);
        }
        match self.core().as_monomial() {
            Some((c, 0)) => Ok(LaurentPoly::monomial(c.pow(e), self.unit_exponent() * e)),
            _ => Err("negative exponent on a non-monomial".into()),
        }
    }

    fn div(&self, rhs: &Self) -> Result<Self, String> {
        match rhs.core().as_monomial() {
            Some((c, 0)) => Ok(&self.scale(&c.inv())
                * &LaurentPoly::monomial(S::one(), -rhs.unit_exponent())),
            _ if rhs.is_zero() => Err("division by zero".into()),
            _ => Err("division by a non-monomial".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Num(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|x| x.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn expr<T: ExprTarget>(&mut self) -> Result<T, ParseError> {
        let mut acc = self.term::<T>()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.at += 1;
            let rhs = self.term::<T>()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term<T: ExprTarget>(&mut self) -> Result<T, ParseError> {
        let mut acc = self.unary::<T>()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.unary::<T>()?;
            acc = if c == '*' {
                acc.mul(&rhs)
            } else {
                match acc.div(&rhs) {
                    Ok(v) => v,
                    Err(m) => return self.err(pos, m),
                }
            };
        }
        Ok(acc)
    }

    fn unary<T: ExprTarget>(&mut self) -> Result<T, ParseError> {
        if self.peek_sym() == Some('-') {
            self.at += 1;
            return Ok(self.unary::<T>()?.neg());
        }
        if self.peek_sym() == Some('+') {
            self.at += 1;
            return self.unary::<T>();
        }
        self.power()
    }

    fn power<T: ExprTarget>(&mut self) -> Result<T, ParseError> {
        let base = self.atom::<T>()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let mut neg = false;
        if self.peek_sym() == Some('-') {
            neg = true;
            self.at += 1;
        }
        let e = match self.toks.get(self.at) {
            Some((_, Tok::Num(n))) => {
                let Ok(e) = i64::try_from(n.clone()) else {
                    return self.err(pos, "exponent too large");
                };
                e
            }
            _ => return self.err(pos, "expected integer exponent"),
        };
        self.at += 1;
        match base.pow(if neg { -e } else { e }) {
            Ok(v) => Ok(v),
            Err(m) => self.err(pos, m),
        }
    }

    fn atom<T: ExprTarget>(&mut self) -> Result<T, ParseError> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Num(n))) => {
                self.at += 1;
                Ok(T::constant(Q::from_integer(n)))
            }
            Some((_, Tok::Ident(name))) => {
                self.at += 1;
                match T::variable(&name) {
                    Some(v) => Ok(v),
                    None => self.err(pos, format!("unknown variable '{name}'")),
                }
            }
            Some((_, Tok::Sym('('))) => {
                self.at += 1;
                let v = self.expr::<T>()?;
                if self.peek_sym() != Some(')') {
                    return self.err(self.pos(), "expected ')'");
                }
                self.at += 1;
                Ok(v)
            }
            Some((_, Tok::Sym(c))) => self.err(pos, format!("unexpected '{c}'")),
            None => self.err(pos, "unexpected end of input"),
        }
    }
}

/// Parses `s` into any [`ExprTarget`].
pub fn parse_expr<T: ExprTarget>(s: &str) -> Result<T, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
    };
    let v = p.expr::<T>()?;
    if p.at != p.toks.len() {
        return p.err(p.pos(), "trailing input");
    }
    Ok(v)
}

pub fn parse_poly<S: Scalar>(s: &str) -> Result<Poly<S>, ParseError> {
    parse_expr(s)
}

pub fn parse_laurent<S: Scalar>(s: &str) -> Result<LaurentPoly<S>, ParseError> {
    parse_expr(s)
}

/// Parses a rational literal such as `-3/4` or `2`.
pub fn parse_rational(s: &str) -> Result<Q, ParseError> {
    let p: Poly<Q> = parse_expr(s)?;
    match p.degree() {
        None => Ok(Q::zero()),
        Some(0) => Ok(p.lc().clone()),
        _ => Err(ParseError {
            pos: 0,
            msg: "expected a rational constant".into(),
        }),
    }
}
