//! Exact determinants and the two binomial determinant evaluations.

use num_traits::{One, Zero};

use super::Parity;
use crate::algebra::{rat, rat_frac, rational_binomial, Rational};
use crate::error::{Error, Result};

/// Determinant of a square matrix by Gaussian elimination over the rationals.
pub fn det_rational(mut m: Vec<Vec<Rational>>) -> Result<Rational> {
    let size = m.len();
    if m.iter().any(|row| row.len() != size) {
        return Err(Error::Precondition("matrix is not square".into()));
    }
    let mut det = Rational::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..size {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Ok(det)
}

fn binomial_matrix(k: &[i64], entry: impl Fn(i64, usize) -> Rational) -> Vec<Vec<Rational>> {
    k.iter().map(|&ki| (1..=k.len()).map(|j| entry(ki, j)).collect()).collect()
}

/// Determinant side of the binomial evaluation: `binom(k_i+j-1, 2j-1)` (even)
/// or `binom(k_i+j-3/2, 2j-2)` (odd).
pub fn det_binom_matrix_side(parity: Parity, k: &[i64]) -> Result<Rational> {
    let m = match parity {
        Parity::Even => binomial_matrix(k, |ki, j| rational_binomial(&rat(ki + j as i64 - 1), 2 * j as u32 - 1)),
        Parity::Odd => binomial_matrix(k, |ki, j| {
            rational_binomial(&(rat(ki + j as i64) - rat_frac(3, 2)), 2 * j as u32 - 2)
        }),
    };
    det_rational(m)
}

/// Product side of the binomial evaluation.
pub fn det_binom_product_side(parity: Parity, k: &[i64]) -> Rational {
    let mut acc = Rational::one();
    for i in 1..=k.len() {
        for j in i + 1..=k.len() {
            let (ki, kj) = (k[i - 1], k[j - 1]);
            let shift = if parity == Parity::Even { 0 } else { 1 };
            acc *= rat((kj - ki) * (kj + ki));
            acc /= rat(((j - i) * (j + i - shift)) as i64);
        }
        if parity == Parity::Even {
            acc *= rat_frac(k[i - 1], i as i64);
        }
    }
    acc
}

/// Evaluates both sides of the binomial determinant identity and returns the common value.
pub fn det_binom(parity: Parity, k: &[i64]) -> Result<Rational> {
    let det = det_binom_matrix_side(parity, k)?;
    let prod = det_binom_product_side(parity, k);
    if det != prod {
        return Err(Error::Mismatch(format!("{parity:?} determinant {det} vs product {prod} at k={k:?}")));
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leibniz(m: &[Vec<Rational>]) -> Rational {
        crate::constant_term::signed_permutations(m.len())
            .into_iter()
            .map(|(p, s)| {
                let term: Rational = p.iter().enumerate().map(|(r, &c)| m[r][c].clone()).product();
                if s > 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn elimination_matches_leibniz() {
        let m: Vec<Vec<Rational>> = [[0, 2, -1, 3], [1, 0, 4, -2], [5, -3, 0, 1], [2, 2, 2, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        assert_eq!(det_rational(m.clone()).unwrap(), leibniz(&m));
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(det_rational(singular).unwrap().is_zero());
        assert_eq!(det_rational(Vec::new()).unwrap(), rat(1));
    }

    #[test]
    fn small_cases() {
        assert_eq!(det_binom(Parity::Even, &[7]).unwrap(), rat(7));
        assert_eq!(det_binom(Parity::Odd, &[-4]).unwrap(), rat(1));
        assert_eq!(det_binom(Parity::Even, &[1, 2]).unwrap(), rat(1));
    }

    #[test]
    fn identity_on_a_grid() {
        for a in -4..=4 {
            for b in -4..=4 {
                for c in [-3, 0, 5] {
                    det_binom(Parity::Even, &[a, b, c]).unwrap();
                    det_binom(Parity::Odd, &[a, b, c]).unwrap();
                }
            }
        }
    }
}
