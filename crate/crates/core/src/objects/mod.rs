//! Combinatorial objects, their weights and brute-force enumerators.

mod bijection;
mod halved;
mod trapezoid;
mod vsasm;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{rat, Coefficient};
use crate::error::{Error, Result};

pub use bijection::{delete_bottom_row_n1, tree_to_vsast, vsast_to_tree};
pub use halved::{
    enumerate_halved_patterns, halved_weight_distribution, visit_halved_patterns, HalvedPattern, HalvedShape,
    RowMode,
};
pub use trapezoid::{
    classify_columns, enumerate_astrapezoids, enumerate_vsast, is_vertically_symmetric, vsast_weight, ASTrapezoid,
    ColumnClass, ColumnTag, VsastList,
};
pub use vsasm::{enumerate_vsasm, is_vsasm, vsasm_to_hmt};

/// Exponents of a monomial `Q^q P^p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightMonomial {
    pub q_exp: u32,
    pub p_exp: u32,
}

impl WeightMonomial {
    pub fn new(q_exp: u32, p_exp: u32) -> Self {
        Self { q_exp, p_exp }
    }

    pub fn to_coefficient(self) -> Coefficient {
        Coefficient::monomial(self.q_exp as i64, self.p_exp, rat(1))
    }
}

/// Upper bound on the number of search nodes an enumerator may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeBudget(pub u64);

impl NodeBudget {
    pub const DEFAULT: NodeBudget = NodeBudget(100_000_000);
}

impl Default for NodeBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Counts visited nodes against a budget.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    limit: u64,
    used: u64,
}

impl NodeCounter {
    pub(crate) fn new(budget: NodeBudget) -> Self {
        Self { limit: budget.0, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::ResourceBound { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Sum of `Q^q P^p` over the weights of a list.
pub fn genfun_from_list<T>(items: &[(T, WeightMonomial)]) -> Coefficient {
    genfun_from_weights(items.iter().map(|(_, w)| *w))
}

pub fn genfun_from_weights(weights: impl IntoIterator<Item = WeightMonomial>) -> Coefficient {
    let mut counts: BTreeMap<WeightMonomial, u64> = BTreeMap::new();
    for w in weights {
        *counts.entry(w).or_default() += 1;
    }
    genfun_from_distribution(&counts)
}

pub fn genfun_from_distribution(counts: &BTreeMap<WeightMonomial, u64>) -> Coefficient {
    counts
        .iter()
        .map(|(w, &c)| w.to_coefficient().scale(&rat(c as i64)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genfun_basics() {
        let empty: Vec<((), WeightMonomial)> = vec![];
        assert!(genfun_from_list(&empty).is_zero());
        assert!(genfun_from_list(&[((), WeightMonomial::new(0, 0))]).is_one());
        let g = genfun_from_list(&[((), WeightMonomial::new(1, 0)), ((), WeightMonomial::new(1, 0))]);
        assert_eq!(g, Coefficient::q().scale(&rat(2)));
    }

    #[test]
    fn budget_trips() {
        let mut c = NodeCounter::new(NodeBudget(2));
        assert!(c.tick().is_ok());
        assert!(c.tick().is_ok());
        assert_eq!(c.tick(), Err(Error::ResourceBound { budget: 2 }));
    }
}
