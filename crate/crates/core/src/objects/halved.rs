//! Halved monotone triangles, halved trees and halved Gelfand-Tsetlin patterns.
//!
//! Cells are addressed by `(i, j)`, `i` the row counted from the top (1-based) and
//! `j` the diagonal counted from the left (1-based). Row `i` of the full shape has
//! `ceil(i/2)` cells; the lower neighbours of `(i, j)` are `(i+1, j)` and `(i+1, j+1)`.
//! Diagonal `j` consists of the cells `(2j-1, j), ..., (n, j)`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{NodeBudget, NodeCounter, WeightMonomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowMode {
    Strict,
    Weak,
}

/// A halved triangle with the bottom `s[j-1]` cells of diagonal `j` removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalvedShape {
    n: usize,
    s: Vec<usize>,
}

impl HalvedShape {
    pub fn new(n: usize, s: &[usize]) -> Result<Self> {
        let m = n.div_ceil(2);
        if s.len() > m && s[m..].iter().any(|&x| x != 0) {
            return Err(Error::InvalidShape(format!("truncation vector longer than {m}")));
        }
        let mut s: Vec<usize> = s.iter().copied().take(m).collect();
        s.resize(m, 0);
        if s.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("truncation vector {s:?} is not weakly decreasing")));
        }
        for (idx, &x) in s.iter().enumerate() {
            let j = idx + 1;
            if x + 2 * j > n + 1 {
                return Err(Error::InvalidShape(format!("diagonal {j} would lose all its cells")));
            }
        }
        Ok(Self { n, s })
    }

    pub fn full(n: usize) -> Self {
        Self { n, s: vec![0; n.div_ceil(2)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Row of the lowest remaining cell of diagonal `j`.
    pub fn bottom_row(&self, j: usize) -> usize {
        self.n - self.s[j - 1]
    }

    pub fn diagonal_len(&self, j: usize) -> usize {
        self.bottom_row(j) + 2 - 2 * j
    }

    pub fn present(&self, i: usize, j: usize) -> bool {
        j >= 1 && j <= self.m() && i >= 2 * j - 1 && i <= self.bottom_row(j)
    }

    /// Diagonals with a cell in row `i` (a contiguous range, possibly empty).
    pub fn row_diagonals(&self, i: usize) -> RangeInclusive<usize> {
        let last = i.div_ceil(2).min(self.m());
        let first = (1..=last).find(|&j| self.present(i, j)).unwrap_or(last + 1);
        first..=last
    }

    pub fn is_untruncated(&self) -> bool {
        self.s.iter().all(|&x| x == 0)
    }
}

/// An integer filling of a [`HalvedShape`] with entries bounded by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalvedPattern {
    shape: HalvedShape,
    mode: RowMode,
    b: i64,
    cells: Vec<Vec<Option<i64>>>,
}

impl HalvedPattern {
    fn empty(shape: HalvedShape, mode: RowMode, b: i64) -> Self {
        let cells = vec![vec![None; shape.m() + 2]; shape.n + 2];
        Self { shape, mode, b, cells }
    }

    /// Builds a pattern from its rows listed top to bottom, left to right, and checks it.
    pub fn from_rows_top_down(shape: HalvedShape, mode: RowMode, b: i64, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != shape.n {
            return Err(Error::Precondition(format!("expected {} rows", shape.n)));
        }
        let mut p = Self::empty(shape, mode, b);
        for (idx, row) in rows.iter().enumerate() {
            let i = idx + 1;
            let diags = p.shape.row_diagonals(i);
            if diags.clone().count() != row.len() {
                return Err(Error::Precondition(format!("row {i} should have {} entries", diags.count())));
            }
            for (j, &v) in diags.zip(row) {
                p.cells[i][j] = Some(v);
            }
        }
        p.check().map_err(Error::Precondition)?;
        Ok(p)
    }

    pub fn shape(&self) -> &HalvedShape {
        &self.shape
    }

    pub fn mode(&self) -> RowMode {
        self.mode
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<i64> {
        self.cells.get(i).and_then(|r| r.get(j)).copied().flatten()
    }

    /// Lowest entry of each diagonal.
    pub fn bottom_row(&self) -> Vec<i64> {
        (1..=self.shape.m())
            .map(|j| self.entry(self.shape.bottom_row(j), j).expect("filled"))
            .collect()
    }

    pub fn rows_top_down(&self) -> Vec<Vec<i64>> {
        (1..=self.shape.n)
            .map(|i| self.shape.row_diagonals(i).map(|j| self.entry(i, j).expect("filled")).collect())
            .collect()
    }

    pub fn rows_bottom_up(&self) -> Vec<Vec<i64>> {
        let mut r = self.rows_top_down();
        r.reverse();
        r
    }

    /// Checks all local inequalities between present cells.
    pub fn check(&self) -> std::result::Result<(), String> {
        let sh = &self.shape;
        for i in 1..=sh.n {
            for j in sh.row_diagonals(i) {
                let v = self.entry(i, j).ok_or_else(|| format!("cell ({i},{j}) is empty"))?;
                if v > self.b {
                    return Err(format!("cell ({i},{j}) exceeds the bound"));
                }
                if let Some(r) = self.entry(i, j + 1) {
                    let ok = match self.mode {
                        RowMode::Strict => v < r,
                        RowMode::Weak => v <= r,
                    };
                    if !ok {
                        return Err(format!("row {i} is not increasing at diagonal {j}"));
                    }
                }
                if let Some(ll) = self.entry(i + 1, j) {
                    if ll > v {
                        return Err(format!("cell ({i},{j}) is below its lower-left neighbour"));
                    }
                }
                if let Some(lr) = self.entry(i + 1, j + 1) {
                    if v > lr {
                        return Err(format!("cell ({i},{j}) exceeds its lower-right neighbour"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Special entries lie strictly between their lower neighbours; the upper
    /// bound is waived when there is no lower-right neighbour.
    pub fn is_special(&self, i: usize, j: usize) -> bool {
        let Some(v) = self.entry(i, j) else { return false };
        let Some(ll) = self.entry(i + 1, j) else { return false };
        ll < v && self.entry(i + 1, j + 1).is_none_or(|lr| v < lr)
    }

    pub fn special_count(&self) -> u32 {
        let mut q = 0;
        for i in 1..=self.shape.n {
            for j in self.shape.row_diagonals(i) {
                q += self.is_special(i, j) as u32;
            }
        }
        q
    }

    /// For each diagonal, whether its two lowest entries are equal. Single-cell
    /// diagonals have no such pair and report `false`.
    pub fn equal_bottom_pairs(&self) -> Vec<bool> {
        (1..=self.shape.m())
            .map(|j| {
                let r = self.shape.bottom_row(j);
                self.shape.diagonal_len(j) >= 2 && self.entry(r - 1, j) == self.entry(r, j)
            })
            .collect()
    }

    pub fn weight(&self) -> WeightMonomial {
        let p = self.equal_bottom_pairs().iter().filter(|&&e| e).count() as u32;
        WeightMonomial::new(self.special_count(), p)
    }
}

impl Serialize for HalvedPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("n", &self.shape.n)?;
        m.serialize_entry("s", &self.shape.s)?;
        m.serialize_entry("mode", &self.mode)?;
        m.serialize_entry("rows_bottom_up", &self.rows_bottom_up())?;
        m.serialize_entry("b", &self.b)?;
        m.end()
    }
}

struct HalvedSearch<'a, F: FnMut(&HalvedPattern)> {
    pattern: HalvedPattern,
    order: Vec<(usize, usize)>,
    bottom: Vec<i64>,
    counter: &'a mut NodeCounter,
    visit: F,
}

impl<F: FnMut(&HalvedPattern)> HalvedSearch<'_, F> {
    fn fill(&mut self, idx: usize) -> Result<()> {
        self.counter.tick()?;
        if idx == self.order.len() {
            (self.visit)(&self.pattern);
            return Ok(());
        }
        let (i, j) = self.order[idx];
        let p = &self.pattern;
        let left = p.entry(i, j - 1);
        let ll = p.entry(i + 1, j);
        let lr = p.entry(i + 1, j + 1);
        let row_lo = left.map(|x| match p.mode {
            RowMode::Strict => x + 1,
            RowMode::Weak => x,
        });
        let hi = lr.map_or(p.b, |x| x.min(p.b));
        let range = if i == p.shape.bottom_row(j) {
            let k = self.bottom[j - 1];
            k..=k
        } else {
            ll.expect("non-bottom cells have a lower-left neighbour")..=hi
        };
        let lo = row_lo.map_or(*range.start(), |x| x.max(*range.start()));
        let top = (*range.end()).min(hi);
        for v in lo..=top {
            self.pattern.cells[i][j] = Some(v);
            self.fill(idx + 1)?;
        }
        self.pattern.cells[i][j] = None;
        Ok(())
    }
}

fn check_bottom(shape: &HalvedShape, bottom: &[i64], mode: RowMode) -> Result<()> {
    if bottom.len() != shape.m() {
        return Err(Error::InvalidBottomRow(format!("expected {} entries, got {}", shape.m(), bottom.len())));
    }
    for j in 1..shape.m() {
        if shape.bottom_row(j) == shape.bottom_row(j + 1) {
            let ok = match mode {
                RowMode::Strict => bottom[j - 1] < bottom[j],
                RowMode::Weak => bottom[j - 1] <= bottom[j],
            };
            if !ok {
                return Err(Error::InvalidBottomRow(format!("{bottom:?} violates row monotonicity")));
            }
        }
    }
    Ok(())
}

/// Calls `visit` on every filling, in lexicographic order of the rows read bottom-up.
pub fn visit_halved_patterns(
    shape: &HalvedShape,
    b: i64,
    bottom: &[i64],
    mode: RowMode,
    budget: NodeBudget,
    visit: impl FnMut(&HalvedPattern),
) -> Result<()> {
    check_bottom(shape, bottom, mode)?;
    let mut order = Vec::new();
    for i in (1..=shape.n).rev() {
        for j in shape.row_diagonals(i) {
            order.push((i, j));
        }
    }
    let mut counter = NodeCounter::new(budget);
    let mut search = HalvedSearch {
        pattern: HalvedPattern::empty(shape.clone(), mode, b),
        order,
        bottom: bottom.to_vec(),
        counter: &mut counter,
        visit,
    };
    search.fill(0)
}

pub fn enumerate_halved_patterns(
    shape: &HalvedShape,
    b: i64,
    bottom: &[i64],
    mode: RowMode,
    budget: NodeBudget,
) -> Result<Vec<(HalvedPattern, WeightMonomial)>> {
    let mut out = Vec::new();
    visit_halved_patterns(shape, b, bottom, mode, budget, |p| out.push((p.clone(), p.weight())))?;
    Ok(out)
}

/// Number of fillings per weight.
pub fn halved_weight_distribution(
    shape: &HalvedShape,
    b: i64,
    bottom: &[i64],
    mode: RowMode,
    budget: NodeBudget,
) -> Result<BTreeMap<WeightMonomial, u64>> {
    let mut out = BTreeMap::new();
    visit_halved_patterns(shape, b, bottom, mode, budget, |p| *out.entry(p.weight()).or_default() += 1)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Coefficient};
    use crate::objects::genfun_from_list;

    #[test]
    fn shape_validation() {
        assert!(HalvedShape::new(5, &[2, 1, 0]).is_ok());
        assert!(HalvedShape::new(5, &[1, 2]).is_err());
        assert!(HalvedShape::new(5, &[5]).is_err());
        assert!(HalvedShape::new(5, &[4, 2, 0]).is_ok());
        assert!(HalvedShape::new(5, &[0, 0, 1]).is_err());
        let sh = HalvedShape::new(5, &[2, 1]).unwrap();
        assert_eq!(sh.s(), &[2, 1, 0]);
        assert_eq!(sh.row_diagonals(4), 2..=2);
        assert_eq!(sh.row_diagonals(5), 3..=3);
        assert_eq!(sh.row_diagonals(3), 1..=2);
    }

    #[test]
    fn order_one() {
        let sh = HalvedShape::full(1);
        let list = enumerate_halved_patterns(&sh, 4, &[2], RowMode::Strict, NodeBudget::DEFAULT).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].1, WeightMonomial::new(0, 0));
    }

    #[test]
    fn order_two_genfun() {
        let sh = HalvedShape::full(2);
        for (b, k) in [(3, 1), (0, 0), (5, -2)] {
            let list = enumerate_halved_patterns(&sh, b, &[k], RowMode::Strict, NodeBudget::DEFAULT).unwrap();
            let expected = Coefficient::one() + Coefficient::q().scale(&rat(b - k));
            assert_eq!(genfun_from_list(&list).substitute_p(&rat(1)), expected);
        }
    }

    #[test]
    fn sample_tree_is_enumerated() {
        let sh = HalvedShape::new(5, &[2, 1, 0]).unwrap();
        let rows = vec![vec![2], vec![-3], vec![-3, 0], vec![-2], vec![-1]];
        let sample = HalvedPattern::from_rows_top_down(sh.clone(), RowMode::Strict, 2, &rows).unwrap();
        assert_eq!(sample.bottom_row(), vec![-3, -2, -1]);
        assert_eq!(sample.weight(), WeightMonomial::new(2, 1));
        let list = enumerate_halved_patterns(&sh, 2, &[-3, -2, -1], RowMode::Strict, NodeBudget::DEFAULT).unwrap();
        assert!(list.iter().any(|(p, w)| p == &sample && *w == WeightMonomial::new(2, 1)));
        assert!(list.iter().all(|(p, _)| p.check().is_ok()));
    }

    #[test]
    fn bottom_row_monotonicity_is_checked() {
        let sh = HalvedShape::full(4);
        assert!(matches!(
            enumerate_halved_patterns(&sh, 5, &[2, 2], RowMode::Strict, NodeBudget::DEFAULT),
            Err(Error::InvalidBottomRow(_))
        ));
        assert!(enumerate_halved_patterns(&sh, 5, &[2, 2], RowMode::Weak, NodeBudget::DEFAULT).is_ok());
    }

    #[test]
    fn order_is_lexicographic_bottom_up() {
        let sh = HalvedShape::full(4);
        let list = enumerate_halved_patterns(&sh, 3, &[0, 2], RowMode::Strict, NodeBudget::DEFAULT).unwrap();
        let keys: Vec<_> = list.iter().map(|(p, _)| p.rows_bottom_up()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn json_form() {
        let sh = HalvedShape::full(2);
        let p = HalvedPattern::from_rows_top_down(sh, RowMode::Strict, 3, &[vec![2], vec![1]]).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"n":2,"s":[0],"mode":"strict","rows_bottom_up":[[1],[2]],"b":3}"#
        );
    }
}
