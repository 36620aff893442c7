//! Both sides of the summation-operator identities, evaluated at integer points.

use super::expr::{apply_operator, OperatorExpr};
use super::summation::{q_sum, SumSpec, SumVariant};
use crate::algebra::{factorial, Coefficient, MultiPoly, Rational};
use crate::error::{Error, Result};

/// Left- and right-hand side of an identity at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSides {
    pub lhs: Coefficient,
    pub rhs: Coefficient,
}

impl LemmaSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn named(prefix: &str, m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("{prefix}{i}")).collect()
}

/// `binom(x + a, d)` as a polynomial in `x`.
fn binomial_poly(vars: &[String], x: &str, a: i64, d: u32) -> Result<MultiPoly> {
    let mut acc = MultiPoly::one(vars);
    for t in 0..d as i64 {
        acc = acc * MultiPoly::linear(vars, x, a - t)?;
    }
    Ok(acc.scale_rational(&Rational::new(1.into(), factorial(d))))
}

fn det(mut m: Vec<Vec<MultiPoly>>, vars: &[String]) -> MultiPoly {
    if m.is_empty() {
        return MultiPoly::one(vars);
    }
    let first = m.remove(0);
    let mut acc = MultiPoly::zero(vars);
    for (col, entry) in first.iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = entry * det(minor, vars);
        acc = if col % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// `det_{i,j} binom(x_i + i + j + offset, 2j - 2 + extra)` over the variables `vars`.
pub fn binomial_det_poly(vars: &[String], offset: i64, extra: u32) -> Result<MultiPoly> {
    let size = vars.len();
    let mut rows = Vec::with_capacity(size);
    for i in 1..=size {
        let row = (1..=size)
            .map(|j| binomial_poly(vars, &vars[i - 1], i as i64 + j as i64 + offset, 2 * j as u32 - 2 + extra))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(det(rows, vars))
}

fn pair_operators(vars: &[String]) -> Vec<OperatorExpr> {
    let mut out = Vec::new();
    for s in 0..vars.len() {
        for t in s + 1..vars.len() {
            out.push(OperatorExpr::T(vars[s].clone(), vars[t].clone()));
            out.push(OperatorExpr::QStrict(vars[t].clone(), vars[s].clone()));
        }
    }
    out
}

fn apply_all(ops: impl IntoIterator<Item = OperatorExpr>, p: MultiPoly) -> Result<MultiPoly> {
    ops.into_iter().try_fold(p, |acc, op| apply_operator(&op, &acc))
}

fn qids(vars: &[String]) -> Vec<OperatorExpr> {
    vars.iter().map(|v| OperatorExpr::QId(v.clone())).collect()
}

/// Moves a polynomial to the variables `target`: variable `i` goes to slot `map[i]`.
/// Variables mapped to `None` must not occur.
fn relabel(p: &MultiPoly, map: &[Option<usize>], target: &[String]) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(target);
    for (exps, c) in p.terms() {
        let mut ne = vec![0; target.len()];
        for (i, &e) in exps.iter().enumerate() {
            match map[i] {
                Some(slot) => ne[slot] += e,
                None if e == 0 => {}
                None => return Err(Error::Precondition(format!("variable {} cannot be dropped", p.vars()[i]))),
            }
        }
        out.add_term(ne, c.clone());
    }
    Ok(out)
}

/// Maps `l_1..l_{m}` onto `k_1..k_{m+1}` without `k_r` (1-based).
fn skip_map(m: usize, r: usize) -> Vec<Option<usize>> {
    (0..m).map(|i| Some(if i + 1 < r { i } else { i + 1 })).collect()
}

fn check_len(k: &[i64], min: usize) -> Result<()> {
    if k.len() < min {
        return Err(Error::Precondition(format!("need at least {min} bounds")));
    }
    Ok(())
}

fn difference_all(vars: &[String], g: &MultiPoly) -> Result<MultiPoly> {
    apply_all(vars.iter().map(|v| OperatorExpr::Fd(v.clone())), g.clone())
}

/// Operand `g` of the odd application lemma, in `l_1..l_{n-1}`.
fn odd_g(n: usize, b: i64, extra: u32) -> Result<MultiPoly> {
    let ls = named("l", n - 1);
    let base = binomial_det_poly(&ls, -b - (n as i64 - 1) - 2, extra)?;
    let ops: Vec<OperatorExpr> = pair_operators(&ls).into_iter().chain(qids(&ls)).collect();
    apply_all(ops, base)
}

/// Operand of the even application lemma, in `l_1..l_n`.
fn even_g(n: usize, b: i64, extra: u32) -> Result<MultiPoly> {
    let ls = named("l", n);
    apply_all(pair_operators(&ls), binomial_det_poly(&ls, -b - n as i64 - 2, extra)?)
}

/// The plain summation applied to `prod Fd_{l_i} g` against the signed operator sum.
pub fn sum_op_normal_sides(b: i64, k: &[i64]) -> Result<LemmaSides> {
    check_len(k, 2)?;
    let n = k.len();
    let g = odd_g(n, b, 2)?;
    let ls = named("l", n - 1);
    let ks = named("k", n);
    let lhs = q_sum(&SumSpec::new(k.to_vec(), SumVariant::Standard)?, &difference_all(&ls, &g)?)?;
    let mut rhs = MultiPoly::zero(&ks);
    for r in 1..=n {
        let moved = relabel(&g, &skip_map(n - 1, r), &ks)?;
        let ops: Vec<OperatorExpr> = (r + 1..=n)
            .map(|t| OperatorExpr::QE(ks[t - 1].clone()))
            .chain((1..r).map(|s| OperatorExpr::QId(ks[s - 1].clone())))
            .collect();
        let term = apply_all(ops, moved)?;
        rhs = if r % 2 == 1 { rhs + term } else { rhs - term };
    }
    Ok(LemmaSides { lhs, rhs: rhs.eval_slice(k) })
}

/// The alternative summation with upper bound `b` applied to `prod Fd_{l_i} g`
/// against its operator expansion.
pub fn sum_op_alt_sides(b: i64, k: &[i64]) -> Result<LemmaSides> {
    check_len(k, 1)?;
    let n = k.len();
    let g = even_g(n, b, 1)?;
    let ls = named("l", n);
    let ks = named("k", n);
    let mut bounds = k.to_vec();
    bounds.push(b);
    let lhs = q_sum(&SumSpec::new(bounds, SumVariant::Alternative)?, &difference_all(&ls, &g)?)?;
    let last = g.substitute(&ls[n - 1], b + 1)?;
    let mut rhs = MultiPoly::zero(&ks);
    for r in 1..=n {
        let mut map = skip_map(n - 1, r);
        map.push(None);
        let moved = relabel(&last, &map, &ks)?;
        let ops: Vec<OperatorExpr> = (r + 1..=n)
            .map(|t| OperatorExpr::QE(ks[t - 1].clone()))
            .chain((1..r).map(|s| OperatorExpr::QId(ks[s - 1].clone())))
            .collect();
        let term = apply_all(ops, moved)?.scale(&Coefficient::q());
        rhs = if r % 2 == 1 { rhs + term } else { rhs - term };
    }
    let own = relabel(&g, &(0..n).map(Some).collect::<Vec<_>>(), &ks)?;
    let tail = apply_all(qids(&ks), own)?;
    rhs = if n.is_multiple_of(2) { rhs + tail } else { rhs - tail };
    Ok(LemmaSides { lhs, rhs: rhs.eval_slice(k) })
}

/// Summation lemma for odd orders: `n = k.len()` bounds.
pub fn app_sum_odd_sides(b: i64, k: &[i64]) -> Result<LemmaSides> {
    check_len(k, 2)?;
    let n = k.len();
    let lhs = q_sum(&SumSpec::new(k.to_vec(), SumVariant::Standard)?, &odd_g(n, b, 1)?)?;
    let ks = named("k", n);
    let rhs = apply_all(pair_operators(&ks), binomial_det_poly(&ks, -b - n as i64 - 2, 0)?)?;
    Ok(LemmaSides { lhs, rhs: rhs.eval_slice(k) })
}

/// Summation lemma for even orders: `n = k.len()` bounds, the last summation bounded by `b`.
pub fn app_sum_even_sides(b: i64, k: &[i64]) -> Result<LemmaSides> {
    check_len(k, 1)?;
    let n = k.len();
    let mut bounds = k.to_vec();
    bounds.push(b);
    let lhs = q_sum(&SumSpec::new(bounds, SumVariant::Alternative)?, &even_g(n, b, 0)?)?;
    let ks = named("k", n);
    let ops: Vec<OperatorExpr> = pair_operators(&ks).into_iter().chain(qids(&ks)).collect();
    let mut rhs = apply_all(ops, binomial_det_poly(&ks, -b - n as i64 - 2, 1)?)?;
    if n % 2 == 1 {
        rhs = -rhs;
    }
    Ok(LemmaSides { lhs, rhs: rhs.eval_slice(k) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_identity_like_matrix() {
        let vars = named("x", 2);
        let d = binomial_det_poly(&vars, 0, 1).unwrap();
        // det [[x1+2, C(x1+3,3)], [x2+3, C(x2+4,3)]] at (0, 0) = 2*4 - 3*1
        assert_eq!(d.eval_slice(&[0, 0]), Coefficient::from_int(5));
    }

    #[test]
    fn lemmas_hold_at_sample_points() {
        for (b, k) in [(3, vec![0, 2]), (4, vec![-1, 1, 3]), (2, vec![0, 1, 2]), (1, vec![-2, 0, 1, 2])] {
            let s = app_sum_odd_sides(b, &k).unwrap();
            assert!(s.holds(), "odd {b} {k:?}: {s:?}");
            let s = sum_op_normal_sides(b, &k).unwrap();
            assert!(s.holds(), "normal {b} {k:?}: {s:?}");
        }
        for (b, k) in [(3, vec![1]), (4, vec![0, 2]), (3, vec![-1, 1, 2]), (5, vec![1, 2, 3])] {
            let s = app_sum_even_sides(b, &k).unwrap();
            assert!(s.holds(), "even {b} {k:?}: {s:?}");
            let s = sum_op_alt_sides(b, &k).unwrap();
            assert!(s.holds(), "alt {b} {k:?}: {s:?}");
        }
    }
}
