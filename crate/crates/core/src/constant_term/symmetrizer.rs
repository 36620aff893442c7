//! Symmetrisers evaluated at rational points and the antisymmetriser identities
//! behind the trapezoid constant terms.

use num_traits::{One, Zero};

use crate::algebra::{constant_term_extract, factorial, Coefficient, Rational, TruncSeries};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymMode {
    Sym,
    Asym,
}

/// All permutations of `0..m` with their signs, in lexicographic order.
pub fn signed_permutations(m: usize) -> Vec<(Vec<usize>, i8)> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i8)>) {
        if left.is_empty() {
            let inversions = (0..cur.len())
                .flat_map(|i| (i + 1..cur.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| cur[i] > cur[j])
                .count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for idx in 0..left.len() {
            let v = left.remove(idx);
            cur.push(v);
            rec(left, cur, out);
            cur.pop();
            left.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..m).collect(), &mut Vec::new(), &mut out);
    out
}

/// `sum_sigma (sgn sigma) f(x_sigma(1), ..., x_sigma(m))`, signed only in `Asym` mode.
pub fn symmetrize<F>(f: F, m: usize, mode: SymMode) -> impl Fn(&[Rational]) -> Result<Rational>
where
    F: Fn(&[Rational]) -> Result<Rational>,
{
    let perms = signed_permutations(m);
    move |x: &[Rational]| {
        if x.len() != m {
            return Err(Error::Precondition(format!("expected {m} coordinates")));
        }
        let mut acc = Rational::zero();
        for (p, sign) in &perms {
            let y: Vec<Rational> = p.iter().map(|&i| x[i].clone()).collect();
            let v = f(&y)?;
            if mode == SymMode::Asym && *sign < 0 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        Ok(acc)
    }
}

fn div(a: Rational, b: Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::Pole)
    } else {
        Ok(a / b)
    }
}

fn pair_weight(q: &Rational, xs: &Rational, xt: &Rational) -> Rational {
    q + (q - Rational::one()) * xs + xt + xs * xt
}

fn qasym_summand(q: &Rational, x: &[Rational]) -> Result<Rational> {
    let m = x.len();
    let y = x.iter().map(|xi| div(xi * (Rational::one() + xi), q + xi)).collect::<Result<Vec<_>>>()?;
    let mut acc = Rational::one();
    for r in 0..m {
        let tail: Rational = y[r..].iter().product();
        acc *= div(num_traits::pow(y[r].clone(), r), Rational::one() - tail)?;
        for t in r + 1..m {
            acc *= pair_weight(q, &x[r], &x[t]);
        }
    }
    Ok(acc)
}

fn qasym_product(q: &Rational, x: &[Rational]) -> Result<Rational> {
    let mut acc = Rational::one();
    for (r, xr) in x.iter().enumerate() {
        acc *= div(q + xr, q - xr * xr)?;
        for xt in &x[r + 1..] {
            let num = (q * (Rational::one() + xr) * (Rational::one() + xt) - xr * xt) * (xt - xr);
            acc *= div(num, q - xr * xt)?;
        }
    }
    Ok(acc)
}

fn z_of(q: &Rational, x: &Rational) -> Result<Rational> {
    div(-x.clone(), (q - (Rational::one() - q) * x) * (Rational::one() + x))
}

fn qasym_var_summand(q: &Rational, x: &[Rational]) -> Result<Rational> {
    let m = x.len();
    let z = x.iter().map(|xi| z_of(q, xi)).collect::<Result<Vec<_>>>()?;
    let mut acc = Rational::one();
    for r in 0..m {
        let head: Rational = z[..=r].iter().product();
        acc *= div(num_traits::pow(z[r].clone(), m - 1 - r), Rational::one() - head)?;
        for t in r + 1..m {
            acc *= pair_weight(q, &x[r], &x[t]);
        }
    }
    Ok(acc)
}

fn qasym_var_product(q: &Rational, x: &[Rational]) -> Result<Rational> {
    let one = Rational::one();
    let mut acc = Rational::one();
    for (r, xr) in x.iter().enumerate() {
        let num = (&one + xr) * (q - (&one - q) * xr);
        let den = q * (&one + xr) * (&one + xr) - xr * xr;
        acc *= div(num, den)?;
        for xt in &x[r + 1..] {
            let num = (q - xr * xt) * (xt - xr);
            acc *= div(num, q * (&one + xr) * (&one + xt) - xr * xt)?;
        }
    }
    Ok(acc)
}

/// A sample point `x` together with a value of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QasymPoint {
    pub x: Vec<Rational>,
    pub q: Rational,
}

/// Tally of an identity check over sample points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityCheck {
    pub matched: usize,
    pub mismatched: Vec<QasymPoint>,
    pub poles: Vec<QasymPoint>,
}

impl IdentityCheck {
    /// True when no evaluated point disagreed and at least one point was evaluated.
    pub fn holds(&self) -> bool {
        self.mismatched.is_empty() && self.matched > 0
    }
}

fn check_identity(
    m: usize,
    points: &[QasymPoint],
    lhs: fn(&Rational, &[Rational]) -> Result<Rational>,
    rhs: fn(&Rational, &[Rational]) -> Result<Rational>,
) -> Result<IdentityCheck> {
    let mut out = IdentityCheck::default();
    for pt in points {
        if pt.x.len() != m {
            return Err(Error::Precondition(format!("point of dimension {} for m = {m}", pt.x.len())));
        }
        match identity_sides(pt, lhs, rhs) {
            Ok((a, b)) if a == b => out.matched += 1,
            Ok(_) => out.mismatched.push(pt.clone()),
            Err(Error::Pole) => out.poles.push(pt.clone()),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn identity_sides(
    pt: &QasymPoint,
    lhs: fn(&Rational, &[Rational]) -> Result<Rational>,
    rhs: fn(&Rational, &[Rational]) -> Result<Rational>,
) -> Result<(Rational, Rational)> {
    let q = pt.q.clone();
    let sym = symmetrize(move |y: &[Rational]| lhs(&q, y), pt.x.len(), SymMode::Asym);
    Ok((sym(&pt.x)?, rhs(&pt.q, &pt.x)?))
}

/// Antisymmetrised sum and product side at one point.
pub fn qasym_sides(pt: &QasymPoint) -> Result<(Rational, Rational)> {
    identity_sides(pt, qasym_summand, qasym_product)
}

/// Both sides of the substituted variant at one point.
pub fn qasym_var_sides(pt: &QasymPoint) -> Result<(Rational, Rational)> {
    identity_sides(pt, qasym_var_summand, qasym_var_product)
}

/// Checks the antisymmetriser identity in `x_i (1+x_i)/(Q+x_i)` at every point.
pub fn verify_qasym(m: usize, points: &[QasymPoint]) -> Result<IdentityCheck> {
    check_identity(m, points, qasym_summand, qasym_product)
}

/// Checks the variant obtained by `x_i -> -x_{m+1-i}/(1+x_{m+1-i})`.
pub fn verify_qasym_var(m: usize, points: &[QasymPoint]) -> Result<IdentityCheck> {
    check_identity(m, points, qasym_var_summand, qasym_var_product)
}

/// Constant term of `x^offset * s` and of its symmetrisation divided by `m!`.
/// Both agree whenever every variable carries the same offset and cap.
pub fn stanton_stembridge_sides(s: &TruncSeries, offset: &[i64]) -> Result<(Coefficient, Coefficient)> {
    let m = offset.len();
    let direct = constant_term_extract(s, offset)?;
    let mut sym = TruncSeries::zero(s.vars(), s.caps());
    for (p, _) in signed_permutations(m) {
        sym = sym.add(&s.permute(&p)?)?;
    }
    let avg = constant_term_extract(&sym, offset)?;
    let scale = Rational::new(1.into(), factorial(m as u32));
    Ok((direct, avg.scale(&scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_frac};

    #[test]
    fn permutation_signs() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| *s as i64).sum::<i64>(), 0);
        assert_eq!(p[0], (vec![0, 1, 2], 1));
    }

    #[test]
    fn symmetriser_basics() {
        let f = |x: &[Rational]| Ok(&x[0] * rat(2) + &x[1] * &x[1]);
        let asym = symmetrize(f, 2, SymMode::Asym);
        assert!(asym(&[rat(3), rat(3)]).unwrap().is_zero());
        let g = |x: &[Rational]| Ok(&x[0] + &x[1]);
        let sym = symmetrize(g, 2, SymMode::Sym);
        assert_eq!(sym(&[rat(1), rat(4)]).unwrap(), rat(10));
    }

    #[test]
    fn qasym_small() {
        let pts = [QasymPoint { x: vec![rat_frac(1, 3)], q: rat(2) },
            QasymPoint { x: vec![rat_frac(2, 7), rat_frac(-3, 5)], q: rat_frac(5, 4) },
            QasymPoint { x: vec![rat_frac(1, 2), rat_frac(1, 2)], q: rat(3) },
            QasymPoint { x: vec![rat_frac(1, 2), rat_frac(-1, 3), rat_frac(3, 11)], q: rat_frac(7, 3) }];
        for m in 1..=3 {
            let here: Vec<QasymPoint> = pts.iter().filter(|p| p.x.len() == m).cloned().collect();
            let c = verify_qasym(m, &here).unwrap();
            assert!(c.holds() || (c.mismatched.is_empty() && !c.poles.is_empty()), "m={m} {c:?}");
            let c = verify_qasym_var(m, &here).unwrap();
            assert!(c.mismatched.is_empty(), "var m={m} {c:?}");
        }
    }

    #[test]
    fn pole_is_reported() {
        let c = verify_qasym(1, &[QasymPoint { x: vec![rat(2)], q: rat(4) }]).unwrap();
        assert_eq!(c.poles.len(), 1);
        assert_eq!(c.matched, 0);
    }
}
