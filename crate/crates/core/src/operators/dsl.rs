//! Text syntax for operator expressions, e.g. `(-Qfd_{k1})^2 * (Id + Qfd_{k2})`.
//!
//! Atoms: `Id`, `E_{v}`, `Fd_{v}`, `Bd_{v}`, `Qfd_{v}`, `QId_{v}`, `QE_{v}`,
//! `S_{x,y}`, `QS_{x,y}`, `T_{x,y}`, the coefficient symbols `Q`, `P` and integers.
//! `*` composes (rightmost acts first), `+`/`-` add, `^n` raises to a power; only
//! `E` and monomial coefficients such as `Q` accept a negative power.

use super::expr::OperatorExpr;
use crate::algebra::{rat, Coefficient};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
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
            let v = s.parse().map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })?;
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^(){}_,".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

pub fn parse_operator_expr(text: &str) -> Result<OperatorExpr> {
    let mut p = OpParser { toks: lex(text)?, pos: 0, len: text.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

struct OpParser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

fn fold(e: OperatorExpr) -> OperatorExpr {
    match e {
        OperatorExpr::Compose(_) | OperatorExpr::Sum(_) | OperatorExpr::Power(..) => match e.as_scalar() {
            Some(c) => OperatorExpr::ScalarMul(c),
            None => e,
        },
        other => other,
    }
}

impl OpParser {
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr> {
        let mut parts = vec![self.term()?];
        loop {
            if self.eat('+') {
                parts.push(self.term()?);
            } else if self.eat('-') {
                parts.push(self.term()?.neg());
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { fold(OperatorExpr::Sum(parts)) })
    }

    fn term(&mut self) -> Result<OperatorExpr> {
        let mut parts = vec![self.unary()?];
        while self.eat('*') {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { fold(OperatorExpr::Compose(parts)) })
    }

    fn unary(&mut self) -> Result<OperatorExpr> {
        if self.eat('-') {
            return Ok(fold(self.unary()?.neg()));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<OperatorExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.here();
        let negative = self.eat('-');
        let exp = match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                v
            }
            _ => return self.err("expected an integer exponent"),
        };
        if let OperatorExpr::E { var, power } = &base {
            let e = if negative { -exp } else { exp };
            return Ok(OperatorExpr::E { var: var.clone(), power: power * e });
        }
        let e = u32::try_from(exp).map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
        if negative {
            return match base.as_scalar().and_then(|c| c.unit_inverse()) {
                Some(inv) => Ok(OperatorExpr::ScalarMul(inv.pow(e))),
                None => Err(Error::Parse { pos: at, msg: "negative power is only allowed on E or Q".into() }),
            };
        }
        Ok(fold(base.pow(e)))
    }

    fn subscript(&mut self, count: usize) -> Result<Vec<String>> {
        self.expect('_')?;
        let braced = self.eat('{');
        let mut names = Vec::with_capacity(count);
        for idx in 0..count {
            if idx > 0 {
                self.expect(',')?;
            }
            match self.peek().cloned() {
                Some(Tok::Ident(s)) => {
                    self.pos += 1;
                    names.push(s);
                }
                _ => return self.err("expected a variable name"),
            }
        }
        if braced {
            self.expect('}')?;
        }
        Ok(names)
    }

    fn atom(&mut self) -> Result<OperatorExpr> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(OperatorExpr::ScalarMul(Coefficient::constant(rat(v))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let at = self.here();
                self.pos += 1;
                let one = |p: &mut Self| p.subscript(1).map(|mut v| v.remove(0));
                let two = |p: &mut Self| p.subscript(2).map(|v| (v[0].clone(), v[1].clone()));
                Ok(match name.as_str() {
                    "Id" => OperatorExpr::Id,
                    "Q" => OperatorExpr::ScalarMul(Coefficient::q()),
                    "P" => OperatorExpr::ScalarMul(Coefficient::p()),
                    "E" => OperatorExpr::E { var: one(self)?, power: 1 },
                    "Fd" => OperatorExpr::Fd(one(self)?),
                    "Bd" => OperatorExpr::Bd(one(self)?),
                    "Qfd" => OperatorExpr::Qfd(one(self)?),
                    "QId" => OperatorExpr::QId(one(self)?),
                    "QE" => OperatorExpr::QE(one(self)?),
                    "S" => {
                        let (x, y) = two(self)?;
                        OperatorExpr::Strict(x, y)
                    }
                    "QS" => {
                        let (x, y) = two(self)?;
                        OperatorExpr::QStrict(x, y)
                    }
                    "T" => {
                        let (x, y) = two(self)?;
                        OperatorExpr::T(x, y)
                    }
                    _ => return Err(Error::Parse { pos: at, msg: format!("unknown operator `{name}`") }),
                })
            }
            _ => self.err("expected an operator, coefficient or `(`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_atoms() {
        assert_eq!(parse_operator_expr("Fd_{k1}").unwrap(), OperatorExpr::Fd("k1".into()));
        assert_eq!(parse_operator_expr(" E_{k2}^-1 ").unwrap(), OperatorExpr::e("k2", -1));
        assert_eq!(
            parse_operator_expr("QS_{k2,k1}").unwrap(),
            OperatorExpr::QStrict("k2".into(), "k1".into())
        );
    }

    #[test]
    fn nested_structure() {
        let e = parse_operator_expr("(-Qfd_{k1})^2 * (Id + Qfd_{k2})").unwrap();
        let expected = OperatorExpr::Compose(vec![
            OperatorExpr::qfd("k1").neg().pow(2),
            OperatorExpr::Sum(vec![OperatorExpr::Id, OperatorExpr::qfd("k2")]),
        ]);
        assert_eq!(e, expected);
    }

    #[test]
    fn coefficient_literals_fold() {
        let e = parse_operator_expr("(Q-1)*E_{k1} + Id").unwrap();
        let OperatorExpr::Sum(parts) = e else { panic!("expected a sum") };
        assert_eq!(
            parts[0],
            OperatorExpr::Compose(vec![
                OperatorExpr::ScalarMul(Coefficient::q() - Coefficient::one()),
                OperatorExpr::e("k1", 1)
            ])
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_operator_expr("Fd_{k1}^-1"), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse_operator_expr("Fd_{k1} +"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(parse_operator_expr("Xy_{k1}"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn display_roundtrips() {
        for s in ["(-Qfd_{k1})^2 * (Id + Qfd_{k2})", "E_{k1}^-1 + QS_{k2,k1} * T_{k1,k2}", "(Q-1)*QE_{k1}", "Q^-1 * Bd_{k1}"] {
            let e = parse_operator_expr(s).unwrap();
            assert_eq!(parse_operator_expr(&e.to_string()).unwrap(), e, "{s} -> {e}");
        }
    }
}
