//! Text syntax for field elements, minimal polynomials and forms.
//!
//! Grammar (whitespace ignored, `*` optional between juxtaposed factors):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | letter | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use thiserror::Error;

use crate::numfield::{Field, FieldElement, FieldError, MinimalPolynomial, Rational};
use crate::polyforms::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { col, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((col, Tok::Num(text.parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            out.push((col, Tok::Ident(c)));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            i += 1;
        } else {
            return err(col, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Fn(char) -> Option<Poly>> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a Field,
    var: F,
    end_col: usize,
}

impl<F: Fn(char) -> Option<Poly>> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero(self.field);
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Op('-')) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Op('+')) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return err(col, "division is only allowed by nonzero constants");
                    }
                    let c = d.coeff(&[0, 0, 0]);
                    acc = acc.scale(&c.invert().map_err(|e: FieldError| ParseError {
                        col,
                        msg: e.to_string(),
                    })?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| err(col, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return err(col, "expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.field.from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(c)) => {
                self.pos += 1;
                match (self.var)(c) {
                    Some(p) => Ok(p),
                    None => err(col, format!("unknown symbol '{c}'")),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => err(self.col(), "expected ')'"),
                }
            }
            Some(_) => err(col, "unexpected token"),
            None => err(col, "unexpected end of input"),
        }
    }
}

fn run<F: Fn(char) -> Option<Poly>>(s: &str, field: &Field, var: F) -> Result<Poly, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return err(1, "empty expression");
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        var,
        end_col: s.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.col(), "unexpected trailing input");
    }
    Ok(e)
}

/// Parses a polynomial in `X, Y, Z` whose coefficients may involve the
/// field generator `a`.
pub fn parse_poly(s: &str, field: &Field) -> Result<Poly, ParseError> {
    run(s, field, |c| match c {
        'X' => Some(Poly::var(field, 0)),
        'Y' => Some(Poly::var(field, 1)),
        'Z' => Some(Poly::var(field, 2)),
        'a' if !field.is_rationals() => Some(Poly::constant(field.generator())),
        _ => None,
    })
}

/// Parses a field element such as `-3/2*a+7`.
pub fn parse_element(s: &str, field: &Field) -> Result<FieldElement, ParseError> {
    let p = run(s, field, |c| {
        (c == 'a' && !field.is_rationals()).then(|| Poly::constant(field.generator()))
    })?;
    Ok(p.coeff(&[0, 0, 0]))
}

/// Parses a minimal polynomial in the variable `t`, e.g. `t^2+t+1`.
pub fn parse_minpoly(s: &str) -> Result<MinimalPolynomial, ParseError> {
    let q = Field::rationals();
    let p = run(s, &q, |c| (c == 't').then(|| Poly::var(&q, 0)))?;
    let deg = p.degree_in(0).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::from_integer(0.into()); deg + 1];
    for (e, c) in p.terms() {
        coeffs[e[0] as usize] = c.coeffs()[0].clone();
    }
    MinimalPolynomial::new(coeffs).map_err(|e| ParseError {
        col: 1,
        msg: e.to_string(),
    })
}
