//! The q-weight that counts entries missing from the row above, and its relation
//! to the number of special entries.

use std::collections::BTreeMap;

use crate::objects::{visit_halved_patterns, HalvedPattern, HalvedShape, NodeBudget, RowMode};
use crate::error::Result;

/// `m + floor(n/2)`: the q-weight exponent claimed for an order-`n` triangle with `m` special entries.
pub fn q_weight_exponent_shift(n: usize, m: i64) -> i64 {
    m + (n / 2) as i64
}

/// Number of entries that do not occur in the row directly above; every entry of the top row counts.
pub fn lai_q_weight(p: &HalvedPattern) -> u32 {
    let rows = p.rows_top_down();
    let mut total = 0;
    let mut above: &[i64] = &[];
    for row in &rows {
        total += row.iter().filter(|v| !above.contains(v)).count() as u32;
        above = row;
    }
    total
}

/// Distributions of the shifted special-entry count and of the direct q-weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QShiftCheck {
    pub shifted: BTreeMap<i64, u64>,
    pub direct: BTreeMap<i64, u64>,
}

impl QShiftCheck {
    pub fn holds(&self) -> bool {
        self.shifted == self.direct
    }
}

/// Compares both distributions over all triangles of order `n` with bottom row `k` and bound `b`.
pub fn check_q_weight_shift(n: usize, b: i64, k: &[i64], budget: NodeBudget) -> Result<QShiftCheck> {
    let mut shifted = BTreeMap::new();
    let mut direct = BTreeMap::new();
    visit_halved_patterns(&HalvedShape::full(n), b, k, RowMode::Strict, budget, |p| {
        *shifted.entry(q_weight_exponent_shift(n, p.special_count() as i64)).or_default() += 1;
        *direct.entry(lai_q_weight(p) as i64).or_default() += 1;
    })?;
    Ok(QShiftCheck { shifted, direct })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_values() {
        assert_eq!(q_weight_exponent_shift(4, 0), 2);
        assert_eq!(q_weight_exponent_shift(1, 0), 0);
        assert_eq!(q_weight_exponent_shift(5, 3), 5);
    }

    #[test]
    fn direct_weight_of_a_small_triangle() {
        let p = HalvedPattern::from_rows_top_down(HalvedShape::full(3), RowMode::Strict, 3, &[vec![2], vec![1], vec![0, 2]])
            .unwrap();
        // top 2; row 1 is new; row {0,2} has 0 and 2 new
        assert_eq!(lai_q_weight(&p), 4);
    }

    #[test]
    fn even_orders_match() {
        for (n, b, k) in [(2, 2, vec![0]), (4, 3, vec![0, 2]), (4, 2, vec![-1, 1])] {
            let c = check_q_weight_shift(n, b, &k, NodeBudget::DEFAULT).unwrap();
            assert!(c.holds(), "n={n}: {c:?}");
        }
    }

    #[test]
    fn odd_orders_are_off_by_one() {
        for (n, b, k) in [(1, 0, vec![0]), (3, 2, vec![0, 1]), (5, 3, vec![0, 1, 3])] {
            let c = check_q_weight_shift(n, b, &k, NodeBudget::DEFAULT).unwrap();
            assert!(!c.holds());
            let moved: BTreeMap<i64, u64> = c.shifted.iter().map(|(&e, &v)| (e + 1, v)).collect();
            assert_eq!(moved, c.direct, "n={n}");
        }
    }
}
