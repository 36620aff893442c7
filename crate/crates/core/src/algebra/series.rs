//! Truncated multivariate power series and constant-term extraction.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::coefficient::Coefficient;
use super::poly::MultiPoly;
use super::rational::{rat, rational_binomial};
use crate::error::{Error, Result};

/// Power series in named variables, truncated per variable at `caps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    vars: Vec<String>,
    caps: Vec<u32>,
    terms: BTreeMap<Vec<u32>, Coefficient>,
}

impl TruncSeries {
    pub fn zero(vars: &[String], caps: &[u32]) -> Self {
        assert_eq!(vars.len(), caps.len());
        Self { vars: vars.to_vec(), caps: caps.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[String], caps: &[u32]) -> Self {
        Self::constant(vars, caps, Coefficient::one())
    }

    pub fn constant(vars: &[String], caps: &[u32], c: Coefficient) -> Self {
        let mut s = Self::zero(vars, caps);
        s.add_term(vec![0; vars.len()], c);
        s
    }

    /// Truncation of a polynomial whose variables all belong to `vars`.
    pub fn from_poly(p: &MultiPoly, vars: &[String], caps: &[u32]) -> Result<Self> {
        let e = p.embed(vars)?;
        let mut s = Self::zero(vars, caps);
        for (exps, c) in e.terms() {
            s.add_term(exps.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term; terms beyond the caps are dropped.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Coefficient) {
        if c.is_zero() || exps.iter().zip(&self.caps).any(|(e, cap)| e > cap) {
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

    pub fn coefficient(&self, exps: &[u32]) -> Coefficient {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        if self.caps != other.caps {
            return Err(Error::CapMismatch(self.caps.clone(), other.caps.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(&self.vars, &self.caps);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.vars, &self.caps);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().zip(&self.caps).any(|(x, cap)| x > cap) {
                    continue;
                }
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let zero = vec![0; self.vars.len()];
        let c0 = self.coefficient(&zero);
        let inv0 = c0.unit_inverse().ok_or(Error::NonUnitConstantTerm)?;
        // 1/(c0 + g) = c0^-1 * sum_i (-c0^-1 g)^i
        let mut h = self.scale(&(-&inv0));
        h.terms.remove(&zero);
        let max_steps: u32 = self.caps.iter().sum();
        let mut acc = Self::one(&self.vars, &self.caps);
        let mut term = acc.clone();
        for _ in 0..max_steps {
            term = term.mul(&h)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(&inv0))
    }

    /// Applies a permutation of variables: variable `i` is renamed to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vars.len() {
            return Err(Error::Precondition("permutation length".into()));
        }
        if perm.iter().any(|&p| self.caps[p] != self.caps[perm[0]]) {
            return Err(Error::Precondition("permuted variables need equal caps".into()));
        }
        let mut out = Self::zero(&self.vars, &self.caps);
        for (e, c) in &self.terms {
            let mut ne = vec![0; e.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }
}

/// A factor of a constant-term integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentFactor {
    /// `x^e`, kept entirely as a monomial offset.
    MonomialPower { var: String, exp: i64 },
    /// `(1+x)^e`.
    BinomialPower { var: String, exp: i64 },
    /// `1/(Q-(1-Q)x)`.
    QLinearInverse { var: String },
    /// `1/f` for a polynomial `f` with unit constant term.
    GeneralInverse(MultiPoly),
    /// A polynomial factor.
    PolyFactor(MultiPoly),
}

fn var_index(vars: &[String], name: &str) -> Result<usize> {
    vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

/// Expands a factor into its series part and a separated monomial offset.
pub fn series_expand(factor: &LaurentFactor, vars: &[String], caps: &[u32]) -> Result<(TruncSeries, Vec<i64>)> {
    let mut offset = vec![0i64; vars.len()];
    let series = match factor {
        LaurentFactor::MonomialPower { var, exp } => {
            offset[var_index(vars, var)?] = *exp;
            TruncSeries::one(vars, caps)
        }
        LaurentFactor::BinomialPower { var, exp } => {
            let idx = var_index(vars, var)?;
            let top = rat(*exp);
            let mut s = TruncSeries::zero(vars, caps);
            for i in 0..=caps[idx] {
                let b = rational_binomial(&top, i);
                if b.is_zero() {
                    continue;
                }
                let mut e = vec![0; vars.len()];
                e[idx] = i;
                s.add_term(e, Coefficient::constant(b));
            }
            s
        }
        LaurentFactor::QLinearInverse { var } => {
            let idx = var_index(vars, var)?;
            let ratio = Coefficient::one() - Coefficient::q();
            let mut s = TruncSeries::zero(vars, caps);
            let mut c = Coefficient::q_pow(-1);
            for i in 0..=caps[idx] {
                let mut e = vec![0; vars.len()];
                e[idx] = i;
                s.add_term(e, c.clone());
                c = (&c * &ratio).div_q_power(1);
            }
            s
        }
        LaurentFactor::GeneralInverse(p) => TruncSeries::from_poly(p, vars, caps)?.inverse()?,
        LaurentFactor::PolyFactor(p) => TruncSeries::from_poly(p, vars, caps)?,
    };
    Ok((series, offset))
}

/// Coefficient of `x^(-offset)` in `s`, i.e. the constant term of `x^offset * s`.
pub fn constant_term_extract(s: &TruncSeries, offset: &[i64]) -> Result<Coefficient> {
    if offset.len() != s.vars.len() {
        return Err(Error::Precondition("offset dimension".into()));
    }
    let mut exps = Vec::with_capacity(offset.len());
    for (i, (&o, &cap)) in offset.iter().zip(&s.caps).enumerate() {
        let needed = -o;
        if needed > cap as i64 {
            return Err(Error::CapExceeded { var: i, needed, cap });
        }
        if needed < 0 {
            return Ok(Coefficient::zero());
        }
        exps.push(needed as u32);
    }
    Ok(s.coefficient(&exps))
}

/// Names `x1, ..., xm`.
pub fn x_vars(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xv() -> Vec<String> {
        x_vars(1)
    }

    fn x_poly(coeffs: &[Coefficient]) -> MultiPoly {
        let v = xv();
        let mut p = MultiPoly::zero(&v);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    #[test]
    fn binomial_power_examples() {
        let v = xv();
        let (s, off) = series_expand(&LaurentFactor::BinomialPower { var: "x1".into(), exp: 2 }, &v, &[4]).unwrap();
        assert_eq!(off, vec![0]);
        let expect = TruncSeries::from_poly(&x_poly(&[1.into(), 2.into(), 1.into()]), &v, &[4]).unwrap();
        assert_eq!(s, expect);
        let (s, _) = series_expand(&LaurentFactor::BinomialPower { var: "x1".into(), exp: -1 }, &v, &[3]).unwrap();
        let expect = TruncSeries::from_poly(&x_poly(&[1.into(), (-1).into(), 1.into(), (-1).into()]), &v, &[3]).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn q_linear_inverse_multiplies_back() {
        let v = xv();
        let (s, _) = series_expand(&LaurentFactor::QLinearInverse { var: "x1".into() }, &v, &[2]).unwrap();
        let one_minus_q = Coefficient::one() - Coefficient::q();
        assert_eq!(s.coefficient(&[0]), Coefficient::q_pow(-1));
        assert_eq!(s.coefficient(&[1]), one_minus_q.div_q_power(2));
        assert_eq!(s.coefficient(&[2]), one_minus_q.pow(2).div_q_power(3));
        let lin = TruncSeries::from_poly(&x_poly(&[Coefficient::q(), -one_minus_q]), &v, &[2]).unwrap();
        assert_eq!(s.mul(&lin).unwrap(), TruncSeries::one(&v, &[2]));
    }

    #[test]
    fn truncated_product() {
        let v = xv();
        let a = TruncSeries::from_poly(&x_poly(&[1.into(), 1.into()]), &v, &[1]).unwrap();
        let b = TruncSeries::from_poly(&x_poly(&[1.into(), (-1).into()]), &v, &[1]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), TruncSeries::one(&v, &[1]));
        let c = TruncSeries::one(&v, &[2]);
        assert!(matches!(a.mul(&c), Err(Error::CapMismatch(..))));
    }

    #[test]
    fn extraction() {
        let v = x_vars(2);
        let one = TruncSeries::one(&v, &[2, 2]);
        assert_eq!(constant_term_extract(&one, &[0, 0]).unwrap(), Coefficient::one());
        let mut xy = TruncSeries::zero(&v, &[2, 2]);
        xy.add_term(vec![1, 1], Coefficient::one());
        assert_eq!(constant_term_extract(&xy, &[-1, -1]).unwrap(), Coefficient::one());
        let w = xv();
        let (s, _) = series_expand(&LaurentFactor::BinomialPower { var: "x1".into(), exp: 5 }, &w, &[5]).unwrap();
        assert_eq!(constant_term_extract(&s, &[-3]).unwrap(), Coefficient::from_int(10));
        assert!(matches!(constant_term_extract(&s, &[-6]), Err(Error::CapExceeded { .. })));
        assert!(constant_term_extract(&s, &[2]).unwrap().is_zero());
    }

    #[test]
    fn general_inverse() {
        let v = x_vars(2);
        // Q(1+x1)(1+x2) - x1 x2
        let x1 = MultiPoly::var(&v, "x1").unwrap();
        let x2 = MultiPoly::var(&v, "x2").unwrap();
        let one = MultiPoly::one(&v);
        let f = (&one + &x1) * (&one + &x2);
        let f = f.scale(&Coefficient::q()) - &x1 * &x2;
        let caps = [3, 3];
        let (inv, _) = series_expand(&LaurentFactor::GeneralInverse(f.clone()), &v, &caps).unwrap();
        let fs = TruncSeries::from_poly(&f, &v, &caps).unwrap();
        assert_eq!(inv.mul(&fs).unwrap(), TruncSeries::one(&v, &caps));
        let bad = &x1 + &x2;
        assert_eq!(series_expand(&LaurentFactor::GeneralInverse(bad), &v, &caps), Err(Error::NonUnitConstantTerm));
    }
}
