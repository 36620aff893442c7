//! Operator-form generating functions of halved monotone triangles, halved trees
//! and vertically symmetric trapezoids.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::expr::{apply_operator, OperatorExpr};
use crate::algebra::{k_vars, Coefficient, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::objects::HalvedShape;

/// Largest number of symbolic `k` variables handled by the operator evaluators.
pub const MAX_SYMBOLIC_VARS: usize = 5;

/// The bound `b`, either fixed or kept as an extra variable named `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BParam {
    Value(i64),
    Symbolic,
}

fn check_cap(what: &str, m: usize) -> Result<()> {
    if m > MAX_SYMBOLIC_VARS {
        return Err(Error::SizeCap { what: what.to_string(), m, cap: MAX_SYMBOLIC_VARS });
    }
    Ok(())
}

fn operand_vars(m: usize, b: BParam) -> Vec<String> {
    let mut vars = k_vars(m);
    if b == BParam::Symbolic {
        vars.push("b".to_string());
    }
    vars
}

/// `sum_i c_i k_i + c_b b + c_0` with the coefficient of `b` ignored unless symbolic.
fn affine(vars: &[String], b: BParam, ks: &[(usize, i64)], b_coef: i64, constant: i64) -> MultiPoly {
    let mut p = MultiPoly::zero(vars);
    for &(i, c) in ks {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        p.add_term(e, Coefficient::from_int(c));
    }
    let constant = match b {
        BParam::Value(v) => constant + b_coef * v,
        BParam::Symbolic => {
            let mut e = vec![0; vars.len()];
            e[vars.len() - 1] = 1;
            p.add_term(e, Coefficient::from_int(b_coef));
            constant
        }
    };
    p.add_term(vec![0; vars.len()], Coefficient::from_int(constant));
    p
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The product the operator acts on, a polynomial in `k1..k_m` (and `b` if symbolic).
pub fn qhmt_operand(n: usize, b: BParam) -> MultiPoly {
    let m = n.div_ceil(2);
    let vars = operand_vars(m, b);
    let nn = n as i64;
    let mut acc = MultiPoly::one(&vars);
    for i in 1..=m as i64 {
        for j in i + 1..=m as i64 {
            let (ii, jj) = ((i - 1) as usize, (j - 1) as usize);
            let left = affine(&vars, b, &[(jj, 1), (ii, -1)], 0, j - i);
            let right = affine(&vars, b, &[(ii, -1), (jj, -1)], 2, nn + 2 - i - j);
            let den = if n % 2 == 1 { (j - i) * (i + j - 1) } else { (j - i) * (i + j) };
            acc = (acc * left * right).scale_rational(&frac(1, den));
        }
    }
    if n.is_multiple_of(2) {
        for i in 1..=m as i64 {
            let f = affine(&vars, b, &[((i - 1) as usize, -1)], 1, nn / 2 + 1 - i);
            acc = (acc * f).scale_rational(&frac(1, i));
        }
    }
    acc
}

/// Factors of the operator product, in application order (each acts after the previous).
pub fn qhmt_operator_factors(n: usize) -> Vec<OperatorExpr> {
    let m = n.div_ceil(2);
    let ks = k_vars(m);
    let mut out = Vec::new();
    for s in 0..m {
        for t in s + 1..m {
            out.push(OperatorExpr::T(ks[s].clone(), ks[t].clone()));
            out.push(OperatorExpr::QStrict(ks[t].clone(), ks[s].clone()));
        }
    }
    if n.is_multiple_of(2) {
        out.extend(ks.iter().map(|k| OperatorExpr::QId(k.clone())));
    }
    out
}

/// The whole operator product as a single expression.
pub fn qhmt_operator(n: usize) -> OperatorExpr {
    let mut f = qhmt_operator_factors(n);
    f.reverse();
    OperatorExpr::Compose(f)
}

fn apply_all(ops: impl IntoIterator<Item = OperatorExpr>, p: MultiPoly) -> Result<MultiPoly> {
    ops.into_iter().try_fold(p, |acc, op| apply_operator(&op, &acc))
}

/// The symbolic Q-generating function of halved monotone triangles of order `n`
/// as a polynomial in `k1..k_m, b`, together with operators acting on it.
#[derive(Clone, Debug)]
pub struct HmtOperatorForm {
    n: usize,
    poly: MultiPoly,
}

impl HmtOperatorForm {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("order must be at least 1".into()));
        }
        check_cap("halved monotone triangle operator form", n.div_ceil(2))?;
        let poly = apply_all(qhmt_operator_factors(n), qhmt_operand(n, BParam::Symbolic))?;
        Ok(Self { n, poly })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n.div_ceil(2)
    }

    /// Polynomial in `k1..k_m, b`.
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    fn check_k(&self, k: &[i64]) -> Result<()> {
        if k.len() != self.m() {
            return Err(Error::Precondition(format!("expected {} bottom values, got {}", self.m(), k.len())));
        }
        Ok(())
    }

    fn eval(&self, p: &MultiPoly, b: i64, k: &[i64]) -> Coefficient {
        let mut pt = k.to_vec();
        pt.push(b);
        p.eval_slice(&pt)
    }

    /// Q-generating function with bottom row `k`, strictly increasing, `k_max <= b`.
    pub fn genfun(&self, b: i64, k: &[i64]) -> Result<Coefficient> {
        self.check_k(k)?;
        if k.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBottomRow(format!("{k:?} is not strictly increasing")));
        }
        if k.last().is_some_and(|&x| x > b) {
            return Err(Error::InvalidBottomRow(format!("{k:?} exceeds the bound {b}")));
        }
        Ok(self.eval(&self.poly, b, k))
    }

    /// Symbolic tree generating function for truncation `s`.
    pub fn tree_poly(&self, s: &[usize]) -> Result<MultiPoly> {
        let shape = HalvedShape::new(self.n, s)?;
        self.truncate(shape.s())
    }

    /// Applies `(-Qfd_{k_r})^{s_r}` without checking that `s` leaves every diagonal nonempty.
    fn truncate(&self, s: &[usize]) -> Result<MultiPoly> {
        let ks = k_vars(self.m());
        let ops = s.iter().zip(&ks).flat_map(|(&sr, k)| std::iter::repeat_n(OperatorExpr::qfd(k).neg(), sr));
        apply_all(ops.collect::<Vec<_>>(), self.poly.clone())
    }

    /// Tree generating function; counts trees when `k` is strictly increasing with `k_max <= b`.
    pub fn tree_genfun(&self, b: i64, k: &[i64], s: &[usize]) -> Result<Coefficient> {
        self.check_k(k)?;
        Ok(self.eval(&self.tree_poly(s)?, b, k))
    }

    /// Applies `(-Qfd)` for indices in `l_eq` and `(Id + Qfd)` for the others
    /// (1-based indices into `k1..k_m`).
    pub fn pair_poly(&self, tree: &MultiPoly, l_eq: &BTreeSet<usize>) -> Result<MultiPoly> {
        if let Some(&bad) = l_eq.iter().find(|&&i| i == 0 || i > self.m()) {
            return Err(Error::Precondition(format!("index {bad} outside 1..={}", self.m())));
        }
        let ks = k_vars(self.m());
        let ops = ks.iter().enumerate().map(|(idx, k)| {
            let q = OperatorExpr::qfd(k);
            if l_eq.contains(&(idx + 1)) {
                q.neg()
            } else {
                OperatorExpr::Sum(vec![OperatorExpr::Id, q])
            }
        });
        apply_all(ops.collect::<Vec<_>>(), tree.clone())
    }

    pub fn pq_genfun(&self, b: i64, k: &[i64], s: &[usize], l_eq: &BTreeSet<usize>) -> Result<Coefficient> {
        self.check_k(k)?;
        let tree = self.tree_poly(s)?;
        Ok(self.eval(&self.pair_poly(&tree, l_eq)?, b, k))
    }

    /// `prod_r (Id - (P-1) Qfd_{c_r}) (-Qfd_{c_r})^{-c_r-1}` at `b = (l-5)/2`, `k = c`.
    pub fn vsast_pqc(&self, l: usize, c: &[i64]) -> Result<Coefficient> {
        let (s, b) = self.vsast_setup(l, c)?;
        let tree = self.truncate(&s)?;
        let ks = k_vars(self.m());
        let factor = |k: &String| {
            OperatorExpr::Sum(vec![
                OperatorExpr::Id,
                OperatorExpr::Compose(vec![
                    OperatorExpr::ScalarMul(Coefficient::one() - Coefficient::p()),
                    OperatorExpr::qfd(k),
                ]),
            ])
        };
        let p = apply_all(ks.iter().map(factor).collect::<Vec<_>>(), tree)?;
        Ok(self.eval(&p, b, c))
    }

    /// Restriction of [`Self::vsast_pqc`] to trapezoids whose `10`-columns are exactly `c10`.
    pub fn vsast_qc(&self, l: usize, c: &[i64], c10: &BTreeSet<i64>) -> Result<Coefficient> {
        let (s, b) = self.vsast_setup(l, c)?;
        if let Some(bad) = c10.iter().find(|x| !c.contains(x)) {
            return Err(Error::Precondition(format!("{bad} is not one of the columns {c:?}")));
        }
        let l_eq: BTreeSet<usize> = c.iter().enumerate().filter(|(_, x)| c10.contains(x)).map(|(i, _)| i + 1).collect();
        let tree = self.truncate(&s)?;
        Ok(self.eval(&self.pair_poly(&tree, &l_eq)?, b, c))
    }

    fn vsast_setup(&self, l: usize, c: &[i64]) -> Result<(Vec<usize>, i64)> {
        let n = self.n + 1;
        if !n.is_multiple_of(2) || l.is_multiple_of(2) {
            return Err(Error::InvalidParity { n, l });
        }
        self.check_k(c)?;
        let nn = n as i64;
        if c.windows(2).any(|w| w[0] >= w[1]) || c.iter().any(|&x| x < -nn || x > -1) {
            return Err(Error::InvalidBottomRow(format!("{c:?} is not an increasing choice from -{n}..=-1")));
        }
        let s = c.iter().map(|&x| (-x - 1) as usize).collect();
        Ok((s, (l as i64 - 5).div_euclid(2)))
    }
}

pub fn qhmt_genfun(n: usize, b: i64, k: &[i64]) -> Result<Coefficient> {
    HmtOperatorForm::new(n)?.genfun(b, k)
}

pub fn qhtree_genfun(n: usize, b: i64, k: &[i64], s: &[usize]) -> Result<Coefficient> {
    HalvedShape::new(n, s)?;
    HmtOperatorForm::new(n)?.tree_genfun(b, k, s)
}

pub fn hmt_pq_genfun(n: usize, b: i64, k: &[i64], s: &[usize], l_eq: &BTreeSet<usize>) -> Result<Coefficient> {
    HalvedShape::new(n, s)?;
    HmtOperatorForm::new(n)?.pq_genfun(b, k, s, l_eq)
}

fn vsast_form(n: usize, l: usize) -> Result<HmtOperatorForm> {
    if !n.is_multiple_of(2) || n == 0 || l.is_multiple_of(2) {
        return Err(Error::InvalidParity { n, l });
    }
    HmtOperatorForm::new(n - 1)
}

pub fn vsast_qc_genfun(n: usize, l: usize, c: &[i64], c10: &BTreeSet<i64>) -> Result<Coefficient> {
    vsast_form(n, l)?.vsast_qc(l, c, c10)
}

pub fn vsast_pqc_genfun_op(n: usize, l: usize, c: &[i64]) -> Result<Coefficient> {
    vsast_form(n, l)?.vsast_pqc(l, c)
}

/// All increasing choices `c_1 < ... < c_{n/2}` from `-n..=-1`.
pub fn vsast_column_choices(n: usize) -> Vec<Vec<i64>> {
    fn rec(start: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=-(left as i64) {
            cur.push(x);
            rec(x + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(-(n as i64), n / 2, &mut Vec::new(), &mut out);
    out
}

/// Sum of [`vsast_pqc_genfun_op`] over every column choice.
pub fn vsast_pq_genfun_op(n: usize, l: usize) -> Result<Coefficient> {
    let form = vsast_form(n, l)?;
    vsast_column_choices(n).iter().map(|c| form.vsast_pqc(l, c)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::objects::{
        enumerate_vsast, enumerate_vsasm, genfun_from_distribution, genfun_from_list, halved_weight_distribution,
        NodeBudget, RowMode,
    };

    fn brute_tree(n: usize, s: &[usize], b: i64, k: &[i64]) -> Coefficient {
        let shape = HalvedShape::new(n, s).unwrap();
        let dist = halved_weight_distribution(&shape, b, k, RowMode::Strict, NodeBudget::DEFAULT).unwrap();
        genfun_from_distribution(&dist).substitute_p(&rat(1))
    }

    #[test]
    fn operand_small_cases() {
        assert!(qhmt_operand(1, BParam::Symbolic).eval_slice(&[5, 2]).is_one());
        let p = qhmt_operand(2, BParam::Symbolic);
        assert_eq!(p.eval_slice(&[1, 3]), Coefficient::from_int(3));
        assert_eq!(qhmt_operand(2, BParam::Value(3)).eval_slice(&[1]), Coefficient::from_int(3));
    }

    #[test]
    fn order_two() {
        for (b, k) in [(3, 1), (0, 0), (5, -2)] {
            let expected = Coefficient::q().scale(&rat(b - k)) + Coefficient::one();
            assert_eq!(qhmt_genfun(2, b, &[k]).unwrap(), expected);
        }
        assert!(qhmt_genfun(1, 4, &[2]).unwrap().is_one());
    }

    #[test]
    fn five_by_five_vsasm_count() {
        let g = qhmt_genfun(4, 2, &[1, 2]).unwrap();
        assert_eq!(g.substitute_p(&rat(1)).substitute_q(&rat(1)).unwrap(), Coefficient::from_int(3));
        assert_eq!(enumerate_vsasm(5, NodeBudget::DEFAULT).unwrap().len(), 3);
    }

    #[test]
    fn matches_brute_force_hmt() {
        for n in 1..=5 {
            let form = HmtOperatorForm::new(n).unwrap();
            let m = form.m();
            let b = 2;
            let ks: Vec<Vec<i64>> = match m {
                1 => vec![vec![0], vec![2]],
                2 => vec![vec![0, 2], vec![-1, 1]],
                _ => vec![vec![-1, 0, 2], vec![0, 1, 2]],
            };
            for k in ks {
                assert_eq!(form.genfun(b, &k).unwrap(), brute_tree(n, &[], b, &k), "n={n} k={k:?}");
            }
        }
    }

    #[test]
    fn trees_match_brute_force() {
        assert_eq!(qhtree_genfun(5, -1, &[-3, -2, -1], &[2, 1, 0]).unwrap(), brute_tree(5, &[2, 1, 0], -1, &[-3, -2, -1]));
        assert_eq!(qhtree_genfun(5, 2, &[-3, -2, -1], &[2, 1, 0]).unwrap(), brute_tree(5, &[2, 1, 0], 2, &[-3, -2, -1]));
        for k in [[0, 1], [-1, 2], [1, 2]] {
            assert_eq!(qhtree_genfun(3, 2, &k, &[1, 0]).unwrap(), brute_tree(3, &[1, 0], 2, &k));
        }
        assert_eq!(qhtree_genfun(4, 1, &[0, 1], &[]).unwrap(), qhmt_genfun(4, 1, &[0, 1]).unwrap());
    }

    #[test]
    fn pair_split_telescopes() {
        let form = HmtOperatorForm::new(3).unwrap();
        let total = form.tree_genfun(2, &[0, 1], &[1, 0]).unwrap();
        let subsets = [vec![], vec![1], vec![2], vec![1, 2]];
        let sum: Coefficient = subsets
            .iter()
            .map(|l| form.pq_genfun(2, &[0, 1], &[1, 0], &l.iter().copied().collect()).unwrap())
            .sum();
        assert_eq!(sum, total);
        assert!(hmt_pq_genfun(3, 2, &[0, 1], &[], &BTreeSet::from([3])).is_err());
    }

    #[test]
    fn vsast_small_instances() {
        assert!(vsast_qc_genfun(2, 3, &[-1], &BTreeSet::new()).unwrap().is_one());
        assert!(vsast_qc_genfun(2, 3, &[-1], &BTreeSet::from([-1])).unwrap().is_zero());
        assert!(vsast_pqc_genfun_op(2, 3, &[-1]).unwrap().is_one());
        for (n, l) in [(2, 3), (2, 5), (4, 3), (4, 5)] {
            let brute = genfun_from_list(&enumerate_vsast(n, l, NodeBudget::DEFAULT).unwrap().items);
            assert_eq!(vsast_pq_genfun_op(n, l).unwrap(), brute, "({n},{l})");
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(HmtOperatorForm::new(11), Err(Error::SizeCap { m: 6, .. })));
    }
}
