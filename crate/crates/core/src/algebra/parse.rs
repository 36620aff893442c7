//! Parser for polynomial literals such as `(k2 - k1)*(Q-1) + 3*b^2`.
//!
//! `Q` and `P` denote the coefficient symbols; every other identifier is a
//! polynomial variable.

use num_bigint::BigInt;

use super::coefficient::Coefficient;
use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

/// Orders `k2` before `k10` by splitting off a trailing number.
fn natural_key(s: &str) -> (String, u64) {
    let split = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let num = s[split..].parse().unwrap_or(0);
    (s[..split].to_string(), num)
}

/// Parses a polynomial literal; variables are collected and sorted naturally.
pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    let toks = lex(text)?;
    let mut vars: Vec<String> = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) if s != "Q" && s != "P" => Some(s.clone()),
            _ => None,
        })
        .collect();
    vars.sort_by_key(|v| natural_key(v));
    vars.dedup();
    parse_poly_in(text, &vars)
}

/// Parses a polynomial literal over a fixed variable list.
pub fn parse_poly_in(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let toks = lex(text)?;
    let mut p = PolyParser { toks, pos: 0, vars: vars.to_vec(), len: text.len() };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Parse { pos: p.toks[p.pos].0, msg: "trailing input".into() });
    }
    Ok(out)
}

struct PolyParser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: Vec<String>,
    len: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                match self.peek().cloned() {
                    Some(Tok::Int(n)) if n != BigInt::from(0) => {
                        self.pos += 1;
                        acc = acc.scale_rational(&Rational::new(BigInt::from(1), n));
                    }
                    _ => return self.err("expected a nonzero integer divisor"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(&self.vars, Coefficient::constant(Rational::from_integer(n))))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "Q" => Ok(MultiPoly::constant(&self.vars, Coefficient::q())),
                    "P" => Ok(MultiPoly::constant(&self.vars, Coefficient::p())),
                    _ => MultiPoly::var(&self.vars, &s),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            _ => self.err("expected a number, identifier or `(`"),
        }
    }
}
