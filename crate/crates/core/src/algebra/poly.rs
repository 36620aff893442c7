//! Multivariate polynomials over [`Coefficient`] in named integer variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coefficient::Coefficient;
use super::rational::{int_binomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Coefficient>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        Self { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Coefficient) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, Coefficient::one())
    }

    pub fn var(vars: &[String], name: &str) -> Result<Self> {
        let idx = index_in(vars, name)?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Coefficient::one());
        Ok(p)
    }

    /// `var + offset` as a polynomial.
    pub fn linear(vars: &[String], name: &str, offset: i64) -> Result<Self> {
        Ok(Self::var(vars, name)? + Self::constant(vars, Coefficient::from_int(offset)))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        index_in(&self.vars, name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Coefficient) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.scale(r));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    /// Substitutes `var -> var + amount`.
    pub fn shift(&self, var: &str, amount: i64) -> Result<Self> {
        Ok(self.shift_index(self.index_of(var)?, amount))
    }

    pub fn shift_index(&self, idx: usize, amount: i64) -> Self {
        if amount == 0 {
            return self.clone();
        }
        let deg = self.degree_in(idx);
        // table[e][i] = C(e, i) * amount^(e-i)
        let a = BigInt::from(amount);
        let table: Vec<Vec<Rational>> = (0..=deg)
            .map(|e| {
                (0..=e)
                    .map(|i| {
                        let b = int_binomial(e as i64, i as i64) * num_traits::pow(a.clone(), (e - i) as usize);
                        Rational::from_integer(b)
                    })
                    .collect()
            })
            .collect();
        let mut out = Self::zero(&self.vars);
        for (exps, c) in &self.terms {
            let e = exps[idx];
            for i in 0..=e {
                let f = &table[e as usize][i as usize];
                if f.is_zero() {
                    continue;
                }
                let mut ne = exps.clone();
                ne[idx] = i;
                out.add_term(ne, if f.is_one() { c.clone() } else { c.scale(f) });
            }
        }
        out
    }

    /// Evaluates at an integer point given in variable order.
    pub fn eval_slice(&self, point: &[i64]) -> Coefficient {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let pt: Vec<Rational> = point.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
        let mut acc = Coefficient::zero();
        for (exps, c) in &self.terms {
            let mut m = Rational::one();
            for (x, &e) in pt.iter().zip(exps) {
                if e > 0 {
                    m *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += &c.scale(&m);
        }
        acc
    }

    pub fn eval(&self, point: &BTreeMap<String, i64>) -> Result<Coefficient> {
        let vals = self
            .vars
            .iter()
            .map(|v| point.get(v).copied().ok_or_else(|| Error::MissingVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_slice(&vals))
    }

    /// Substitutes an integer for one variable; the variable stays in the list with degree zero.
    pub fn substitute(&self, var: &str, value: i64) -> Result<Self> {
        let idx = self.index_of(var)?;
        let v = Rational::from_integer(BigInt::from(value));
        let mut out = Self::zero(&self.vars);
        for (exps, c) in &self.terms {
            let mut ne = exps.clone();
            let e = ne[idx];
            ne[idx] = 0;
            out.add_term(ne, c.scale(&num_traits::pow(v.clone(), e as usize)));
        }
        Ok(out)
    }

    /// Re-embeds into a larger variable list containing all current variables.
    pub fn embed(&self, vars: &[String]) -> Result<Self> {
        let map = self.vars.iter().map(|v| index_in(vars, v)).collect::<Result<Vec<_>>>()?;
        let mut out = Self::zero(vars);
        for (exps, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &e) in exps.iter().enumerate() {
                ne[map[i]] = e;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> Self {
        let mut out = Self::zero(&self.vars);
        for (exps, c) in &self.terms {
            out.add_term(exps.clone(), f(c));
        }
        out
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "MultiPoly variable lists differ");
    }
}

fn index_in(vars: &[String], name: &str) -> Result<usize> {
    vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Variable names `k1, ..., km`.
pub fn k_vars(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("k{i}")).collect()
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn vars2() -> Vec<String> {
        k_vars(2)
    }

    #[test]
    fn shift_examples() {
        let v = vars2();
        let k1 = MultiPoly::var(&v, "k1").unwrap();
        let k2 = MultiPoly::var(&v, "k2").unwrap();
        let one = MultiPoly::one(&v);
        assert_eq!(k1.pow(2).shift("k1", 1).unwrap(), k1.pow(2) + k1.scale_rational(&rat(2)) + one.clone());
        assert_eq!(k1.shift("k1", -1).unwrap(), &k1 - &one);
        assert_eq!((&k1 * &k2).shift("k2", 3).unwrap(), &k1 * &k2 + k1.scale_rational(&rat(3)));
        assert!(k1.shift("b", 1).is_err());
    }

    #[test]
    fn eval_examples() {
        let v = vars2();
        let k1 = MultiPoly::var(&v, "k1").unwrap();
        let k2 = MultiPoly::var(&v, "k2").unwrap();
        let p = &k1 + &MultiPoly::constant(&v, Coefficient::q());
        let pt: BTreeMap<String, i64> = [("k1".to_string(), 0), ("k2".to_string(), 9)].into();
        assert_eq!(p.eval(&pt).unwrap(), Coefficient::q());
        assert_eq!((&k1 * &k2).eval_slice(&[2, 3]), Coefficient::from_int(6));
        let partial: BTreeMap<String, i64> = [("k1".to_string(), 0)].into();
        assert_eq!(p.eval(&partial), Err(Error::MissingVariable("k2".into())));
    }

    #[test]
    fn substitute_and_embed() {
        let v = vars2();
        let k1 = MultiPoly::var(&v, "k1").unwrap();
        let p = k1.pow(3);
        assert_eq!(p.substitute("k1", 2).unwrap(), MultiPoly::constant(&v, Coefficient::from_int(8)));
        let bigger: Vec<String> = vec!["k1".into(), "k2".into(), "b".into()];
        let e = p.embed(&bigger).unwrap();
        assert_eq!(e.eval_slice(&[2, 0, 5]), Coefficient::from_int(8));
    }
}
