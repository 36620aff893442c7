//! Symplectic characters at the all-ones point.

use num_bigint::BigInt;
use num_traits::One;

use super::det::det_rational;
use super::Parity;
use crate::algebra::{int_binomial, rat, rat_frac, Rational};
use crate::error::{Error, Result};

/// Weakly decreasing nonnegative parts. Trailing zeros are kept: the number of
/// parts fixes the rank of the group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    /// `(b - k_1, ..., b - k_m)` for a weakly increasing row `k` bounded by `b`.
    pub fn from_bottom_row(b: i64, k: &[i64]) -> Result<Self> {
        let parts = k
            .iter()
            .map(|&x| u64::try_from(b - x).map_err(|_| Error::InvalidBottomRow(format!("{k:?} exceeds {b}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpMethod {
    Product,
    JacobiTrudi,
}

fn product(lam: &[i64], parity: Parity) -> Rational {
    let m = lam.len() as i64;
    let mut acc = Rational::one();
    for i in 1..=m {
        let li = lam[i as usize - 1];
        for j in i + 1..=m {
            let lj = lam[j as usize - 1];
            match parity {
                Parity::Even => {
                    acc *= rat((li - lj + j - i) * (li + lj + 2 * m + 2 - i - j));
                    acc /= rat((j - i) * (i + j));
                }
                Parity::Odd => {
                    acc *= rat((li - lj + j - i) * (li + lj + 2 * m + 1 - i - j));
                    acc /= rat((j - i) * (i + j - 1));
                }
            }
        }
        if parity == Parity::Even {
            acc *= rat_frac(li + m + 1 - i, i);
        }
    }
    acc
}

fn jacobi_trudi(lam: &[i64], parity: Parity) -> Result<Rational> {
    let m = lam.len() as i64;
    if m == 0 {
        return Ok(Rational::one());
    }
    let vars = match parity {
        Parity::Even => 2 * m,
        Parity::Odd => 2 * m - 1,
    };
    let h = |d: i64| Rational::from_integer(int_binomial(d + vars - 1, d));
    let matrix = (1..=m)
        .map(|i| {
            let li = lam[i as usize - 1];
            (1..=m).map(|j| h(li - i + j) + h(li - i - j + 2)).collect()
        })
        .collect();
    Ok(det_rational(matrix)? / rat(2))
}

/// `sp_lam(1, ..., 1)` for the even (`2m` arguments) or odd (`2m - 1`) symplectic group.
pub fn sp_all_ones(lam: &Partition, parity: Parity, method: SpMethod) -> Result<BigInt> {
    let parts: Vec<i64> = lam.parts().iter().map(|&p| p as i64).collect();
    let value = match method {
        SpMethod::Product => product(&parts, parity),
        SpMethod::JacobiTrudi => jacobi_trudi(&parts, parity)?,
    };
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonInteger(format!("character value {value}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_partition_is_trivial() {
        let empty = Partition::new(vec![]).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            for method in [SpMethod::Product, SpMethod::JacobiTrudi] {
                assert_eq!(sp_all_ones(&empty, parity, method).unwrap(), BigInt::from(1));
            }
        }
        let zeros = Partition::new(vec![0, 0]).unwrap();
        assert_eq!(sp_all_ones(&zeros, Parity::Even, SpMethod::JacobiTrudi).unwrap(), BigInt::from(1));
    }

    #[test]
    fn standard_representation() {
        // the defining representation of Sp(4) has dimension 4
        let lam = Partition::new(vec![1, 0]).unwrap();
        assert_eq!(sp_all_ones(&lam, Parity::Even, SpMethod::Product).unwrap(), BigInt::from(4));
        assert_eq!(sp_all_ones(&lam, Parity::Even, SpMethod::JacobiTrudi).unwrap(), BigInt::from(4));
    }

    #[test]
    fn methods_agree() {
        for a in 0..5u64 {
            for b in 0..=a {
                for c in 0..=b {
                    for parts in [vec![a], vec![a, b], vec![a, b, c], vec![a, b, c, 0]] {
                        let lam = Partition::new(parts).unwrap();
                        for parity in [Parity::Even, Parity::Odd] {
                            assert_eq!(
                                sp_all_ones(&lam, parity, SpMethod::Product).unwrap(),
                                sp_all_ones(&lam, parity, SpMethod::JacobiTrudi).unwrap(),
                                "{lam:?} {parity:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::from_bottom_row(3, &[0, 1, 3]).unwrap().parts(), &[3, 2, 0]);
        assert!(Partition::from_bottom_row(3, &[4]).is_err());
    }
}
