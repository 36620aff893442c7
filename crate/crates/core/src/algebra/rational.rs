use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Generalised binomial coefficient `x(x-1)...(x-m+1)/m!`.
pub fn rational_binomial(x: &Rational, m: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= x - rat(i as i64);
        acc /= rat(i as i64 + 1);
    }
    acc
}

/// Binomial coefficient with integer top, zero when `m < 0`.
pub fn int_binomial(top: i64, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    rational_binomial(&rat(top), m as u32).to_integer()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(rational_binomial(&rat(5), 2), rat(10));
        assert_eq!(rational_binomial(&rat_frac(7, 3), 0), rat(1));
        assert_eq!(rational_binomial(&rat_frac(1, 2), 2), rat_frac(-1, 8));
        assert_eq!(rational_binomial(&rat(-1), 3), rat(-1));
        assert_eq!(rational_binomial(&rat(2), 5), rat(0));
    }

    #[test]
    fn int_binomial_negative_lower() {
        assert_eq!(int_binomial(4, -1), BigInt::zero());
        assert_eq!(int_binomial(6, 3), BigInt::from(20));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
