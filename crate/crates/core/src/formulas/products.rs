//! Product formulas for halved monotone triangles and halved Gelfand-Tsetlin patterns.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::det::det_rational;
use crate::algebra::{int_binomial, rat, rat_frac, rational_binomial, Rational};
use crate::error::{Error, Result};

fn half_up(n: usize) -> usize {
    n.div_ceil(2)
}

fn check_len(n: usize, k: &[i64]) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    if k.len() != half_up(n) {
        return Err(Error::InvalidBottomRow(format!("order {n} needs {} entries, got {k:?}", half_up(n))));
    }
    Ok(())
}

fn check_bounded(k: &[i64], b: i64, strict: bool) -> Result<()> {
    if k.windows(2).any(|w| if strict { w[0] >= w[1] } else { w[0] > w[1] }) {
        let kind = if strict { "strictly" } else { "weakly" };
        return Err(Error::InvalidBottomRow(format!("{k:?} is not {kind} increasing")));
    }
    if k.iter().any(|&x| x > b) {
        return Err(Error::InvalidBottomRow(format!("{k:?} has an entry above {b}")));
    }
    Ok(())
}

fn to_integer(r: Rational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonInteger(format!("{what} evaluated to {r}")))
    }
}

/// Product side of the determinant evaluation for order `n`; this is the
/// operand of the halved monotone triangle operator formula.
pub fn hmt_product(n: usize, b: i64, k: &[i64]) -> Result<Rational> {
    check_len(n, k)?;
    let m = k.len() as i64;
    let nn = n as i64;
    let even = n.is_multiple_of(2);
    let mut acc = Rational::one();
    for i in 1..=m {
        for j in i + 1..=m {
            let (ki, kj) = (k[i as usize - 1], k[j as usize - 1]);
            acc *= rat((kj - ki + j - i) * (2 * b + nn + 2 - kj - ki - j - i));
            acc /= rat((j - i) * (j + i - if even { 0 } else { 1 }));
        }
        if even {
            acc *= rat_frac(b + m + 1 - k[i as usize - 1] - i, i);
        }
    }
    Ok(acc)
}

/// Signed determinant side of the same evaluation.
pub fn hmt_det_side(n: usize, b: i64, k: &[i64]) -> Result<Rational> {
    check_len(n, k)?;
    let m = k.len() as i64;
    let extra = if n.is_multiple_of(2) { 1 } else { 0 };
    let matrix = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| rational_binomial(&rat(k[i as usize - 1] + i + j - b - m - 2), (2 * j - 2 + extra) as u32))
                .collect()
        })
        .collect();
    let sign_exp = if n.is_multiple_of(2) { (m + 1) * m / 2 } else { m * (m - 1) / 2 };
    let det = det_rational(matrix)?;
    Ok(if sign_exp % 2 == 0 { det } else { -det })
}

/// Evaluates both sides for order `n` and returns the product value.
pub fn hmt_det_closed(n: usize, b: i64, k: &[i64]) -> Result<Rational> {
    let prod = hmt_product(n, b, k)?;
    let det = hmt_det_side(n, b, k)?;
    if prod != det {
        return Err(Error::Mismatch(format!("n={n} b={b} k={k:?}: product {prod} vs determinant {det}")));
    }
    Ok(prod)
}

/// Number of halved monotone triangles counted with weight `2` per special entry.
pub fn two_enumeration(n: usize, b: i64, k: &[i64]) -> Result<BigInt> {
    check_len(n, k)?;
    check_bounded(k, b, true)?;
    let m = k.len() as i64;
    let even = n.is_multiple_of(2);
    let mut acc = Rational::one();
    for i in 1..=m {
        for j in i + 1..=m {
            let (ki, kj) = (k[i as usize - 1], k[j as usize - 1]);
            acc *= rat((kj - ki) * (2 * b + 1 - ki - kj));
            acc /= rat((j - i) * (i + j - if even { 0 } else { 1 }));
        }
        if even {
            acc *= rat_frac(2 * b + 1 - 2 * k[i as usize - 1], i);
        }
    }
    let four = BigInt::from(4).pow((m * (m - 1) / 2) as u32);
    to_integer(acc * Rational::from_integer(four), "two-enumeration product")
}

/// Start and end points of the non-intersecting path families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LgvEndpoints {
    pub starts: Vec<(i64, i64)>,
    pub ends: Vec<(i64, i64)>,
}

pub fn lgv_endpoints(n: usize, b: i64, k: &[i64]) -> Result<LgvEndpoints> {
    check_len(n, k)?;
    let starts = k.iter().enumerate().map(|(i, &ki)| (0, ki + i as i64)).collect();
    let ends = (1..=k.len() as i64).map(|i| (n as i64 + 1 - 2 * i, b + i - 1)).collect();
    Ok(LgvEndpoints { starts, ends })
}

/// Number of unit-step paths from `s` to `e`.
fn path_count(s: (i64, i64), e: (i64, i64)) -> BigInt {
    let (dx, dy) = (e.0 - s.0, e.1 - s.1);
    if dx < 0 || dy < 0 {
        return BigInt::from(0);
    }
    int_binomial(dx + dy, dx)
}

/// Determinant of path counts between the endpoints, i.e. the number of halved
/// Gelfand-Tsetlin patterns with the given bottom row and bound.
pub fn lgv_count(n: usize, b: i64, k: &[i64]) -> Result<BigInt> {
    check_bounded(k, b, false)?;
    let pts = lgv_endpoints(n, b, k)?;
    let matrix = pts
        .starts
        .iter()
        .map(|&s| pts.ends.iter().map(|&e| Rational::from_integer(path_count(s, e))).collect())
        .collect();
    to_integer(det_rational(matrix)?, "path determinant")
}

/// The binomial determinant `binom(n+b+1-k_i-i-j, n+1-2j)` evaluated literally.
pub fn lgv_binomial_det(n: usize, b: i64, k: &[i64]) -> Result<BigInt> {
    check_len(n, k)?;
    let nn = n as i64;
    let m = k.len() as i64;
    let matrix = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| Rational::from_integer(int_binomial(nn + b + 1 - k[i as usize - 1] - i - j, nn + 1 - 2 * j)))
                .collect()
        })
        .collect();
    to_integer(det_rational(matrix)?, "binomial determinant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{enumerate_halved_patterns, HalvedShape, NodeBudget, RowMode};

    #[test]
    fn trivial_orders() {
        assert_eq!(hmt_det_closed(1, 3, &[-2]).unwrap(), rat(1));
        assert_eq!(hmt_det_closed(2, 5, &[1]).unwrap(), rat(5));
        assert_eq!(two_enumeration(1, 0, &[0]).unwrap(), BigInt::from(1));
        assert_eq!(two_enumeration(2, 4, &[1]).unwrap(), BigInt::from(7));
        assert_eq!(lgv_count(1, 2, &[0]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(two_enumeration(3, 2, &[1, 1]).is_err());
        assert!(two_enumeration(3, 2, &[1, 3]).is_err());
        assert!(hmt_det_closed(3, 2, &[1]).is_err());
        assert!(lgv_count(4, 2, &[2, 1]).is_err());
    }

    #[test]
    fn endpoints() {
        let pts = lgv_endpoints(6, 3, &[1, 2, 2]).unwrap();
        assert_eq!(pts.starts, vec![(0, 1), (0, 3), (0, 4)]);
        assert_eq!(pts.ends, vec![(5, 3), (3, 4), (1, 5)]);
    }

    #[test]
    fn paths_count_weak_patterns() {
        for n in 1..=6usize {
            let m = n.div_ceil(2);
            let shape = HalvedShape::full(n);
            for b in 0..=2i64 {
                let mut k = vec![-1i64; m];
                loop {
                    let brute = enumerate_halved_patterns(&shape, b, &k, RowMode::Weak, NodeBudget::DEFAULT)
                        .unwrap()
                        .len();
                    let lgv = lgv_count(n, b, &k).unwrap();
                    assert_eq!(lgv, BigInt::from(brute), "n={n} b={b} k={k:?}");
                    assert_eq!(lgv_binomial_det(n, b, &k).unwrap(), lgv);
                    assert_eq!(Rational::from_integer(lgv), hmt_det_closed(n, b, &k).unwrap());
                    // next weakly increasing row in [-1, b]
                    let Some(pos) = (0..m).rev().find(|&i| k[i] < b) else { break };
                    let v = k[pos] + 1;
                    k[pos..].iter_mut().for_each(|x| *x = v);
                }
            }
        }
    }

    #[test]
    fn sample_pattern_is_counted() {
        let shape = HalvedShape::full(6);
        let all = enumerate_halved_patterns(&shape, 3, &[1, 2, 2], RowMode::Weak, NodeBudget::DEFAULT).unwrap();
        let rows = vec![vec![2], vec![2], vec![1, 3], vec![1, 3], vec![1, 2, 3], vec![1, 2, 2]];
        assert!(all.iter().any(|(p, _)| p.rows_top_down() == rows));
        assert_eq!(lgv_count(6, 3, &[1, 2, 2]).unwrap(), BigInt::from(all.len()));
    }
}
