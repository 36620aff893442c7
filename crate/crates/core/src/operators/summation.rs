//! Q-weighted summation over interlacing rows.

use crate::algebra::{Coefficient, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumVariant {
    /// Every `l_i` strictly between its neighbours `k_i`, `k_{i+1}` contributes a factor `Q`.
    Standard,
    /// As standard, except the last `l` contributes `Q` whenever it exceeds its left neighbour.
    Alternative,
}

/// Bounds `k_1 <= ... <= k_n` of a summation over `l_1 < ... < l_{n-1}`
/// with `k_i <= l_i <= k_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpec {
    k: Vec<i64>,
    variant: SumVariant,
}

impl SumSpec {
    pub fn new(k: Vec<i64>, variant: SumVariant) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::Precondition("at least one bound is needed".into()));
        }
        if k.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!("bounds {k:?} are not weakly increasing")));
        }
        Ok(Self { k, variant })
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn variant(&self) -> SumVariant {
        self.variant
    }

    /// Number of summation variables.
    pub fn len(&self) -> usize {
        self.k.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn strict_exponent(&self, i: usize, l: i64) -> bool {
        let lower = self.k[i] < l;
        if self.variant == SumVariant::Alternative && i + 1 == self.len() {
            lower
        } else {
            lower && l < self.k[i + 1]
        }
    }
}

/// Sums `Q^(weight) f(l)` over all admissible `l`, calling `f` once per point.
pub fn q_sum_with(spec: &SumSpec, mut f: impl FnMut(&[i64]) -> Result<Coefficient>) -> Result<Coefficient> {
    fn rec(
        spec: &SumSpec,
        i: usize,
        exp: i64,
        l: &mut Vec<i64>,
        acc: &mut Coefficient,
        f: &mut dyn FnMut(&[i64]) -> Result<Coefficient>,
    ) -> Result<()> {
        if i == spec.len() {
            *acc += &f(l)?.mul_q_power(exp);
            return Ok(());
        }
        let lo = match l.last() {
            Some(&prev) => spec.k[i].max(prev + 1),
            None => spec.k[i],
        };
        for v in lo..=spec.k[i + 1] {
            l.push(v);
            rec(spec, i + 1, exp + spec.strict_exponent(i, v) as i64, l, acc, f)?;
            l.pop();
        }
        Ok(())
    }
    let mut acc = Coefficient::zero();
    rec(spec, 0, 0, &mut Vec::with_capacity(spec.len()), &mut acc, &mut f)?;
    Ok(acc)
}

/// Sums a polynomial in `l_1, ..., l_{n-1}` (its variables in order).
pub fn q_sum(spec: &SumSpec, f: &MultiPoly) -> Result<Coefficient> {
    if f.vars().len() != spec.len() {
        return Err(Error::Precondition(format!(
            "summand has {} variables, the summation {}",
            f.vars().len(),
            spec.len()
        )));
    }
    q_sum_with(spec, |l| Ok(f.eval_slice(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn single_variable() {
        let spec = SumSpec::new(vec![0, 2], SumVariant::Standard).unwrap();
        let f = MultiPoly::one(&["l1".to_string()]);
        assert_eq!(q_sum(&spec, &f).unwrap(), Coefficient::q() + Coefficient::from_int(2));
        let alt = SumSpec::new(vec![0, 2], SumVariant::Alternative).unwrap();
        assert_eq!(q_sum(&alt, &f).unwrap(), Coefficient::q().scale(&crate::algebra::rat(2)) + Coefficient::one());
    }

    #[test]
    fn strictness_between_rows() {
        // l1 in [0,1], l2 in [1,1], l1 < l2 forces l1 = 0.
        let spec = SumSpec::new(vec![0, 1, 1], SumVariant::Standard).unwrap();
        let f = parse_poly("l1 + 10*l2").unwrap();
        assert_eq!(q_sum(&spec, &f).unwrap(), Coefficient::from_int(10));
    }

    #[test]
    fn rejects_decreasing_bounds() {
        assert!(SumSpec::new(vec![2, 1], SumVariant::Standard).is_err());
    }
}
