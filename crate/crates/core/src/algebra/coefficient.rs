//! Laurent polynomials in `Q`, polynomial in `P`, with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Exponent pair `(q, p)` of a monomial `Q^q P^p`.
pub type MonoKey = (i64, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coefficient {
    terms: BTreeMap<MonoKey, Rational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::monomial(0, 0, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(q: i64, p: u32, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert((q, p), r);
        }
        Self { terms }
    }

    /// The symbol `Q`.
    pub fn q() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    /// The symbol `P`.
    pub fn p() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, 0, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|r| r.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, q: i64, p: u32) -> Rational {
        self.terms.get(&(q, p)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: MonoKey, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += r;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect() }
    }

    /// Multiplies by `Q^e` for any integer `e`.
    pub fn mul_q_power(&self, e: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&(q, p), v)| ((q + e, p), v.clone())).collect() }
    }

    /// Divides by `Q^e`.
    pub fn div_q_power(&self, e: u32) -> Self {
        self.mul_q_power(-(e as i64))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a unit, i.e. of a single monomial `r Q^a` (no `P`).
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(q, p), r) = self.terms.iter().next()?;
        if p != 0 {
            return None;
        }
        Some(Self::monomial(-q, 0, r.recip()))
    }

    pub fn min_q_exp(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    /// Evaluates at rational values of `Q` and `P`.
    pub fn eval(&self, q: &Rational, p: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (&(qe, pe), r) in &self.terms {
            let qv = if qe >= 0 {
                num_traits::pow(q.clone(), qe as usize)
            } else {
                if q.is_zero() {
                    return Err(Error::Pole);
                }
                num_traits::pow(q.recip(), (-qe) as usize)
            };
            acc += r * qv * num_traits::pow(p.clone(), pe as usize);
        }
        Ok(acc)
    }

    /// Substitutes `P = p`, keeping `Q` symbolic.
    pub fn substitute_p(&self, p: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(qe, pe), r) in &self.terms {
            out.add_term((qe, 0), r * num_traits::pow(p.clone(), pe as usize));
        }
        out
    }

    /// Substitutes `Q = q` (nonzero unless no negative powers occur), keeping `P` symbolic.
    pub fn substitute_q(&self, q: &Rational) -> Result<Self> {
        let mut out = Self::zero();
        for (&(qe, pe), r) in &self.terms {
            let qv = if qe >= 0 {
                num_traits::pow(q.clone(), qe as usize)
            } else {
                if q.is_zero() {
                    return Err(Error::Pole);
                }
                num_traits::pow(q.recip(), (-qe) as usize)
            };
            out.add_term((0, pe), r * qv);
        }
        Ok(out)
    }

    /// Value at `Q = P = 1`.
    pub fn at_ones(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, r| a + r)
    }

    /// True when every coefficient is a nonnegative integer and no negative power of `Q` occurs.
    pub fn is_nonneg_integer_polynomial(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(q, _), r)| q >= 0 && r.is_integer() && !r.is_negative())
    }

    /// The constant as an integer, if this coefficient is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let r = self.terms.get(&(0, 0))?;
        r.is_integer().then(|| r.to_integer())
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (&(qa, pa), ra) in &self.terms {
            for (&(qb, pb), rb) in &rhs.terms {
                out.add_term((qa + qb, pa + pb), ra * rb);
            }
        }
        out
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: &Coefficient) -> Coefficient {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Coefficient> for &'a Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Coefficient {
    fn sum<I: Iterator<Item = Coefficient>>(iter: I) -> Self {
        iter.fold(Coefficient::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&(q, p), r)) in self.terms.iter().enumerate() {
            let neg = r.is_negative();
            let abs = r.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if !abs.is_one() || (q == 0 && p == 0) {
                parts.push(abs.to_string());
            }
            match p {
                0 => {}
                1 => parts.push("P".to_string()),
                _ => parts.push(format!("P^{p}")),
            }
            match q {
                0 => {}
                1 => parts.push("Q".to_string()),
                _ => parts.push(format!("Q^{q}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

struct TermView<'a> {
    q: i64,
    p: u32,
    r: &'a Rational,
}

impl Serialize for TermView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("q", &self.q)?;
        m.serialize_entry("p", &self.p)?;
        m.serialize_entry("num", &self.r.numer().to_string())?;
        m.serialize_entry("den", &self.r.denom().to_string())?;
        m.end()
    }
}

struct TermList<'a>(&'a Coefficient);

impl Serialize for TermList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.terms.len()))?;
        for (&(q, p), r) in &self.0.terms {
            seq.serialize_element(&TermView { q, p, r })?;
        }
        seq.end()
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("terms", &TermList(self))?;
        m.end()
    }
}
