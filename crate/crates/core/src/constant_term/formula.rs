//! Constant-term integrands assembled from Laurent factors.

use num_bigint::BigInt;

use crate::algebra::{
    constant_term_extract, factorial, parse_poly_in, series_expand, x_vars, Coefficient, LaurentFactor, MultiPoly,
    Rational, TruncSeries,
};
use crate::error::{Error, Result};
use crate::objects::HalvedShape;

/// A product of Laurent factors in `x1..xm` times a constant prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtFormula {
    vars: Vec<String>,
    factors: Vec<LaurentFactor>,
    prefactor: Coefficient,
    default_cap: u32,
}

impl CtFormula {
    /// An empty product in `m` variables whose series are truncated at `default_cap`.
    pub fn new(m: usize, default_cap: u32) -> Self {
        Self { vars: x_vars(m), factors: Vec::new(), prefactor: Coefficient::one(), default_cap }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn factors(&self) -> &[LaurentFactor] {
        &self.factors
    }

    pub fn prefactor(&self) -> &Coefficient {
        &self.prefactor
    }

    pub fn push(&mut self, f: LaurentFactor) {
        self.factors.push(f);
    }

    pub fn scale(&mut self, c: &Coefficient) {
        self.prefactor = &self.prefactor * c;
    }

    fn poly(&self, text: &str) -> MultiPoly {
        parse_poly_in(text, &self.vars).expect("integrand literal")
    }

    fn push_poly(&mut self, text: &str) {
        let p = self.poly(text);
        self.push(LaurentFactor::PolyFactor(p));
    }

    fn push_inverse(&mut self, text: &str) {
        let p = self.poly(text);
        self.push(LaurentFactor::GeneralInverse(p));
    }

    fn push_monomial(&mut self, var: &str, exp: i64) {
        self.push(LaurentFactor::MonomialPower { var: var.to_string(), exp });
    }

    fn push_binomial(&mut self, var: &str, exp: i64) {
        self.push(LaurentFactor::BinomialPower { var: var.to_string(), exp });
    }

    /// `(-x/(Q-(1-Q)x))^e` for `e >= 0`.
    fn push_tree_power(&mut self, var: &str, e: u32) {
        self.push_monomial(var, e as i64);
        for _ in 0..e {
            self.push(LaurentFactor::QLinearInverse { var: var.to_string() });
        }
        if e % 2 == 1 {
            self.prefactor = -&self.prefactor;
        }
    }

    /// Total exponent of the monomial factors, per variable.
    pub fn offsets(&self) -> Vec<i64> {
        let mut out = vec![0; self.vars.len()];
        for f in &self.factors {
            if let LaurentFactor::MonomialPower { var, exp } = f {
                if let Some(i) = self.vars.iter().position(|v| v == var) {
                    out[i] += exp;
                }
            }
        }
        out
    }

    pub fn default_caps(&self) -> Vec<u32> {
        vec![self.default_cap; self.vars.len()]
    }

    /// The series part of the integrand (monomial factors excluded) truncated at `caps`.
    pub fn series(&self, caps: &[u32]) -> Result<TruncSeries> {
        let mut acc = TruncSeries::one(&self.vars, caps);
        for f in &self.factors {
            if matches!(f, LaurentFactor::MonomialPower { .. }) {
                continue;
            }
            let (s, _) = series_expand(f, &self.vars, caps)?;
            acc = acc.mul(&s)?;
        }
        Ok(acc)
    }

    pub fn evaluate_with_caps(&self, caps: &[u32]) -> Result<Coefficient> {
        let offsets = self.offsets();
        for (i, (&o, &cap)) in offsets.iter().zip(caps).enumerate() {
            if -o > cap as i64 {
                return Err(Error::CapExceeded { var: i, needed: -o, cap });
            }
        }
        if offsets.iter().any(|&o| o > 0) {
            return Ok(Coefficient::zero());
        }
        let ct = constant_term_extract(&self.series(caps)?, &offsets)?;
        Ok(&ct * &self.prefactor)
    }

    /// Constant term with every variable truncated at the default cap.
    pub fn evaluate(&self) -> Result<Coefficient> {
        self.evaluate_with_caps(&self.default_caps())
    }

    /// Replaces the first nontrivial `(1+x)^e` by `(1-x)^e`; used to check that
    /// verification notices a corrupted integrand.
    pub fn flip_binomial_sign(&mut self) -> bool {
        let vars = self.vars.clone();
        for f in self.factors.iter_mut() {
            if let LaurentFactor::BinomialPower { var, exp } = f {
                if *exp == 0 {
                    continue;
                }
                let base = parse_poly_in(&format!("1 - {var}"), &vars).expect("literal");
                let p = base.pow(exp.unsigned_abs() as u32);
                *f = if *exp > 0 { LaurentFactor::PolyFactor(p) } else { LaurentFactor::GeneralInverse(p) };
                return true;
            }
        }
        false
    }
}

fn pair_core(xs: &str, xt: &str) -> String {
    format!(
        "({xt} - {xs})*({xs} + {xt} + {xs}*{xt})*(Q + (Q-1)*{xs} + {xt} + {xs}*{xt})\
         *(Q + (Q-1)*{xs} + (Q-1)*{xt} + (Q-2)*{xs}*{xt})"
    )
}

fn push_tree_pairs(f: &mut CtFormula) {
    let vars = f.vars.clone();
    for s in 0..vars.len() {
        for t in s + 1..vars.len() {
            f.push_poly(&pair_core(&vars[s], &vars[t]));
        }
    }
}

fn push_symmetric_pairs(f: &mut CtFormula) {
    let vars = f.vars.clone();
    for s in 0..vars.len() {
        for t in s + 1..vars.len() {
            let (xs, xt) = (&vars[s], &vars[t]);
            f.push_poly(&format!(
                "({xt} - {xs})^2*({xs} + {xt} + {xs}*{xt})*(Q + (Q-1)*{xs} + (Q-1)*{xt} + (Q-2)*{xs}*{xt})*(Q - {xs}*{xt})"
            ));
            f.push_inverse(&format!("Q*(1 + {xs})*(1 + {xt}) - {xs}*{xt}"));
        }
    }
}

fn inverse_factorial(m: usize) -> Coefficient {
    Coefficient::constant(Rational::new(BigInt::from(1), factorial(m as u32)))
}

/// Integrand whose constant term is the Q-generating function of halved trees.
pub fn qhtree_formula(n: usize, b: i64, k: &[i64], s: &[usize]) -> Result<CtFormula> {
    let shape = HalvedShape::new(n, s)?;
    let m = shape.m();
    if k.len() != m {
        return Err(Error::InvalidBottomRow(format!("expected {m} bottom values, got {}", k.len())));
    }
    let mut f = CtFormula::new(m, n as u32);
    let nn = n as i64;
    let shift = if n % 2 == 1 { (nn + 1) / 2 } else { nn / 2 };
    if n.is_multiple_of(2) && (n / 2) % 2 == 1 {
        f.scale(&Coefficient::from_int(-1));
    }
    for (r, x) in f.vars.clone().iter().enumerate() {
        f.push_monomial(x, 1 - nn);
        if n.is_multiple_of(2) {
            f.push_poly(&format!("Q - (1-Q)*{x}"));
        }
        f.push_binomial(x, k[r] - b - shift);
        f.push_tree_power(x, shape.s()[r] as u32);
    }
    push_tree_pairs(&mut f);
    Ok(f)
}

fn check_vsast_columns(n: usize, l: usize, c: &[i64]) -> Result<()> {
    if !n.is_multiple_of(2) || n == 0 || l.is_multiple_of(2) {
        return Err(Error::InvalidParity { n, l });
    }
    let nn = n as i64;
    if c.len() != n / 2 || c.windows(2).any(|w| w[0] >= w[1]) || c.iter().any(|&x| x < -nn || x > -1) {
        return Err(Error::InvalidBottomRow(format!("{c:?} is not an increasing choice of {} labels from -{n}..=-1", n / 2)));
    }
    Ok(())
}

/// Integrand for vertically symmetric trapezoids with prescribed 1-columns `c`.
pub fn vsast_pqc_formula(n: usize, l: usize, c: &[i64]) -> Result<CtFormula> {
    check_vsast_columns(n, l, c)?;
    let nn = n as i64;
    let half_b = (l as i64 - 5).div_euclid(2);
    let mut f = CtFormula::new(n / 2, n as u32);
    for (r, x) in f.vars.clone().iter().enumerate() {
        f.push_monomial(x, 2 - nn);
        f.push_binomial(x, c[r] - half_b - nn / 2);
        f.push_poly(&format!("Q - (P-Q)*{x}"));
        f.push(LaurentFactor::QLinearInverse { var: x.clone() });
        f.push_tree_power(x, (-c[r] - 1) as u32);
    }
    push_tree_pairs(&mut f);
    Ok(f)
}

/// Integrand for all vertically symmetric `(n, l)`-trapezoids, `n` even.
pub fn vsast_pq_formula(n: usize, l: usize) -> Result<CtFormula> {
    if !n.is_multiple_of(2) || n == 0 || l.is_multiple_of(2) {
        return Err(Error::InvalidParity { n, l });
    }
    let nn = n as i64;
    let m = n / 2;
    let mut f = CtFormula::new(m, n as u32);
    f.scale(&inverse_factorial(m));
    let bin = -((l as i64 - 5).div_euclid(2) + nn / 2);
    push_symmetric_body(&mut f, 2 - nn, bin);
    Ok(f)
}

fn push_symmetric_body(f: &mut CtFormula, mono: i64, bin: i64) {
    for x in f.vars.clone() {
        f.push_monomial(&x, mono);
        f.push_poly(&format!("Q + (Q-P)*{x}"));
        f.push_binomial(&x, bin);
        f.push_inverse(&format!("Q*(1 + {x})^2 - {x}^2"));
    }
    push_symmetric_pairs(f);
}

fn odd_formula(n: usize, scalar: i64) -> Result<CtFormula> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParity { n, l: 1 });
    }
    let m = (n - 1) / 2;
    let nn = n as i64;
    let mut f = CtFormula::new(m, n as u32);
    f.scale(&inverse_factorial(m).scale(&Rational::from_integer(scalar.into())));
    push_symmetric_body(&mut f, 3 - nn, -(nn - 3) / 2);
    Ok(f)
}

/// Integrand for vertically symmetric `(n, 1)`-trapezoids, `n` odd.
pub fn vsast_pq_odd_formula(n: usize) -> Result<CtFormula> {
    odd_formula(n, 2)
}

/// Integrand for vertically symmetric alternating sign triangles of odd order `n`.
pub fn vsastriangle_formula(n: usize) -> Result<CtFormula> {
    odd_formula(n, 1)
}

pub fn ct_qhtree(n: usize, b: i64, k: &[i64], s: &[usize]) -> Result<Coefficient> {
    qhtree_formula(n, b, k, s)?.evaluate()
}

pub fn ct_vsast_pqc(n: usize, l: usize, c: &[i64]) -> Result<Coefficient> {
    vsast_pqc_formula(n, l, c)?.evaluate()
}

pub fn ct_vsast_pq(n: usize, l: usize) -> Result<Coefficient> {
    vsast_pq_formula(n, l)?.evaluate()
}

pub fn ct_vsast_pq_odd(n: usize) -> Result<Coefficient> {
    vsast_pq_odd_formula(n)?.evaluate()
}

pub fn ct_vsastriangle(n: usize) -> Result<Coefficient> {
    vsastriangle_formula(n)?.evaluate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::objects::{enumerate_vsast, genfun_from_list, NodeBudget};
    use crate::operators::{qhtree_genfun, vsast_pqc_genfun_op};

    #[test]
    fn trivial_instances() {
        assert!(ct_qhtree(1, 3, &[1], &[]).unwrap().is_one());
        assert_eq!(ct_vsast_pq_odd(1).unwrap(), Coefficient::from_int(2));
        assert!(ct_vsastriangle(1).unwrap().is_one());
        assert!(ct_vsast_pqc(2, 3, &[-1]).unwrap().is_one());
        assert!(ct_vsast_pq(2, 3).unwrap().is_one());
    }

    #[test]
    fn matches_operator_form() {
        for (n, b, k, s) in [
            (2, 3, vec![1], vec![0]),
            (3, 2, vec![0, 2], vec![1, 0]),
            (4, 1, vec![-1, 1], vec![1, 1]),
            (5, 2, vec![-3, -2, -1], vec![2, 1, 0]),
            (5, 1, vec![-2, 0, 1], vec![0, 0, 0]),
        ] {
            assert_eq!(ct_qhtree(n, b, &k, &s).unwrap(), qhtree_genfun(n, b, &k, &s).unwrap(), "n={n} k={k:?} s={s:?}");
        }
        for c in [[-4, -3], [-4, -1], [-2, -1], [-3, -2]] {
            assert_eq!(ct_vsast_pqc(4, 5, &c).unwrap(), vsast_pqc_genfun_op(4, 5, &c).unwrap(), "{c:?}");
        }
    }

    #[test]
    fn vsast_totals() {
        for (n, l) in [(2, 5), (4, 3)] {
            let brute = genfun_from_list(&enumerate_vsast(n, l, NodeBudget::DEFAULT).unwrap().items);
            let ct = ct_vsast_pq(n, l).unwrap();
            assert_eq!(ct, brute, "({n},{l})");
            assert_eq!(ct.eval(&rat(1), &rat(1)).unwrap(), rat(brute.at_ones().numer().try_into().unwrap()));
        }
        let odd = genfun_from_list(&enumerate_vsast(3, 1, NodeBudget::DEFAULT).unwrap().items);
        assert_eq!(ct_vsast_pq_odd(3).unwrap(), odd);
        assert_eq!(ct_vsast_pq_odd(3).unwrap(), ct_vsastriangle(3).unwrap().scale(&rat(2)));
    }

    #[test]
    fn cap_guard_and_fault() {
        let f = qhtree_formula(3, 2, &[0, 2], &[0, 0]).unwrap();
        assert!(matches!(f.evaluate_with_caps(&[1, 1]), Err(Error::CapExceeded { .. })));
        let mut g = f.clone();
        assert!(g.flip_binomial_sign());
        assert_ne!(g.evaluate().unwrap(), f.evaluate().unwrap());
    }
}
