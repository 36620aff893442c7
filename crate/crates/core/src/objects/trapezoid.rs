//! Alternating sign trapezoids.

use serde::Serialize;

use super::{NodeBudget, NodeCounter, WeightMonomial};
use crate::error::{Error, Result};

/// An `(n, l)` alternating sign trapezoid: rows of lengths `2n+l-2, 2n+l-4, ..., l`,
/// each row centred under the one above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ASTrapezoid {
    n: usize,
    l: usize,
    rows: Vec<Vec<i8>>,
}

impl ASTrapezoid {
    /// Builds a trapezoid after checking its shape and entry alphabet (not the sign conditions).
    pub fn new(n: usize, l: usize, rows: Vec<Vec<i8>>) -> Result<Self> {
        if n == 0 || l == 0 {
            return Err(Error::Precondition("n and l must be positive".into()));
        }
        if rows.len() != n {
            return Err(Error::Precondition(format!("expected {n} rows, got {}", rows.len())));
        }
        for (i, r) in rows.iter().enumerate() {
            let want = 2 * n + l - 2 - 2 * i;
            if r.len() != want {
                return Err(Error::Precondition(format!("row {i} has length {}, expected {want}", r.len())));
            }
            if r.iter().any(|&x| !(-1..=1).contains(&x)) {
                return Err(Error::Precondition(format!("row {i} has entries outside -1..1")));
            }
        }
        Ok(Self { n, l, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        2 * self.n + self.l - 2
    }

    /// Entry at row `i` (from the top) and absolute column `a` (from the left edge of the top row).
    pub fn entry(&self, i: usize, a: usize) -> Option<i8> {
        let w = self.width();
        if i >= self.n || a < i || a + i >= w {
            return None;
        }
        Some(self.rows[i][a - i])
    }

    /// Column label used in the text: the leftmost `n` columns are `-n..-1`.
    pub fn label(&self, a: usize) -> i64 {
        a as i64 - self.n as i64
    }

    /// Row index of the lowest entry of column `a`.
    pub fn bottom_row_of(&self, a: usize) -> usize {
        a.min(self.width() - 1 - a).min(self.n - 1)
    }

    pub fn column(&self, a: usize) -> Vec<i8> {
        (0..=self.bottom_row_of(a)).map(|i| self.rows[i][a - i]).collect()
    }

    pub fn column_sum(&self, a: usize) -> i64 {
        self.column(a).iter().map(|&x| x as i64).sum()
    }

    /// Absolute index of the vertical symmetry axis (odd `l` only).
    pub fn center(&self) -> Option<usize> {
        (self.l % 2 == 1).then(|| self.n - 1 + (self.l - 1) / 2)
    }

    pub fn central_column(&self) -> Option<Vec<i8>> {
        self.center().map(|c| self.column(c))
    }

    /// Independent check of all defining conditions.
    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let alternates = |v: &[i8]| {
            let nz: Vec<i8> = v.iter().copied().filter(|&x| x != 0).collect();
            nz.windows(2).all(|w| w[0] != w[1])
        };
        for (i, r) in self.rows.iter().enumerate() {
            if !alternates(r) {
                return Err(format!("row {i} does not alternate"));
            }
            let s: i64 = r.iter().map(|&x| x as i64).sum();
            let bottom_exception = self.l == 1 && i == self.n - 1;
            if !(s == 1 || (bottom_exception && s == 0)) {
                return Err(format!("row {i} sums to {s}"));
            }
        }
        for a in 0..self.width() {
            let col = self.column(a);
            if !alternates(&col) {
                return Err(format!("column {a} does not alternate"));
            }
            if let Some(&top) = col.iter().find(|&&x| x != 0) {
                if top != 1 {
                    return Err(format!("column {a} starts with -1"));
                }
            }
        }
        if self.l >= 2 {
            for a in self.n..self.n + self.l - 2 {
                if self.column_sum(a) != 0 {
                    return Err(format!("central column {a} does not sum to 0"));
                }
            }
        }
        Ok(())
    }
}

pub fn is_vertically_symmetric(t: &ASTrapezoid) -> bool {
    t.rows.iter().all(|r| r.iter().eq(r.iter().rev()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnTag {
    Zero,
    /// Column sum 1 with bottom entry 0.
    OneZero,
    /// Column sum 1 with bottom entry 1.
    OneOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnClass {
    pub tags: Vec<ColumnTag>,
    /// Labels of the 1-columns among the leftmost `n` columns.
    pub one_columns: Vec<i64>,
}

impl ColumnClass {
    pub fn count(&self, tag: ColumnTag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }
}

pub fn classify_columns(t: &ASTrapezoid) -> ColumnClass {
    let tags: Vec<ColumnTag> = (0..t.width())
        .map(|a| {
            let col = t.column(a);
            let sum: i64 = col.iter().map(|&x| x as i64).sum();
            match (sum, col.last()) {
                (1, Some(0)) => ColumnTag::OneZero,
                (1, _) => ColumnTag::OneOne,
                _ => ColumnTag::Zero,
            }
        })
        .collect();
    let one_columns = (0..t.n)
        .filter(|&a| tags[a] != ColumnTag::Zero)
        .map(|a| t.label(a))
        .collect();
    ColumnClass { tags, one_columns }
}

/// `Q` counts the `-1`s left of the axis; `P` counts 10-columns among the `n-1` leftmost columns.
pub fn vsast_weight(t: &ASTrapezoid) -> Result<WeightMonomial> {
    if !is_vertically_symmetric(t) {
        return Err(Error::NotSymmetric);
    }
    let q_cols = t.n - 1 + (t.l - 1) / 2;
    let mut q = 0;
    for a in 0..q_cols {
        q += t.column(a).iter().filter(|&&x| x == -1).count() as u32;
    }
    let class = classify_columns(t);
    let p = (0..t.n - 1).filter(|&a| class.tags[a] == ColumnTag::OneZero).count() as u32;
    Ok(WeightMonomial::new(q, p))
}

struct TrapSearch<'a> {
    n: usize,
    l: usize,
    width: usize,
    symmetric: bool,
    sums: Vec<u8>,
    rows: Vec<Vec<i8>>,
    out: Vec<ASTrapezoid>,
    counter: &'a mut NodeCounter,
}

impl TrapSearch<'_> {
    fn rows_from(&mut self, i: usize) -> Result<()> {
        self.counter.tick()?;
        if i == self.n {
            if self.l >= 3 && (self.n..self.n + self.l - 2).any(|a| self.sums[a] != 0) {
                return Ok(());
            }
            self.out.push(ASTrapezoid { n: self.n, l: self.l, rows: self.rows.clone() });
            return Ok(());
        }
        let len = self.width - 2 * i;
        let mut row = vec![0i8; len];
        self.cells(i, i, 0, &mut row)
    }

    fn cells(&mut self, i: usize, a: usize, prefix: i8, row: &mut Vec<i8>) -> Result<()> {
        let end = self.width - i;
        if a == end {
            let last_row_exception = self.l == 1 && i == self.n - 1;
            if prefix == 1 || (last_row_exception && prefix == 0) {
                self.rows.push(row.clone());
                self.rows_from(i + 1)?;
                self.rows.pop();
            }
            return Ok(());
        }
        self.counter.tick()?;
        let old = self.sums[a];
        let mirror = self.width - 1 - a;
        // Column sums stay mirror-symmetric, so the mirrored column is already decided.
        let forced = (self.symmetric && mirror < a).then(|| self.sums[mirror]);
        for new in 0..=1u8 {
            if forced.is_some_and(|f| f != new) {
                continue;
            }
            let d = new as i8 - old as i8;
            let p = prefix + d;
            if !(0..=1).contains(&p) {
                continue;
            }
            row[a - i] = d;
            self.sums[a] = new;
            self.cells(i, a + 1, p, row)?;
            self.sums[a] = old;
        }
        row[a - i] = 0;
        Ok(())
    }
}

fn search(n: usize, l: usize, symmetric: bool, budget: NodeBudget) -> Result<Vec<ASTrapezoid>> {
    if n == 0 || l == 0 {
        return Err(Error::Precondition("n and l must be positive".into()));
    }
    let width = 2 * n + l - 2;
    let mut counter = NodeCounter::new(budget);
    let mut s = TrapSearch {
        n,
        l,
        width,
        symmetric,
        sums: vec![0; width],
        rows: Vec::new(),
        out: Vec::new(),
        counter: &mut counter,
    };
    s.rows_from(0)?;
    let mut out = s.out;
    out.sort();
    Ok(out)
}

/// All `(n, l)` alternating sign trapezoids in lexicographic order of their rows.
pub fn enumerate_astrapezoids(n: usize, l: usize, budget: NodeBudget) -> Result<Vec<ASTrapezoid>> {
    search(n, l, false, budget)
}

/// Vertically symmetric trapezoids paired with their weights.
#[derive(Clone, Debug)]
pub struct VsastList {
    pub items: Vec<(ASTrapezoid, WeightMonomial)>,
    /// Set when the parameters force an empty list.
    pub warning: Option<String>,
}

pub fn enumerate_vsast(n: usize, l: usize, budget: NodeBudget) -> Result<VsastList> {
    if l.is_multiple_of(2) {
        return Err(Error::InvalidParity { n, l });
    }
    if l >= 3 && n % 2 == 1 {
        return Ok(VsastList {
            items: Vec::new(),
            warning: Some(format!("no vertically symmetric ({n},{l})-trapezoids exist for odd n and l >= 3")),
        });
    }
    let items = search(n, l, true, budget)?
        .into_iter()
        .map(|t| {
            let w = vsast_weight(&t).expect("symmetric by construction");
            (t, w)
        })
        .collect();
    Ok(VsastList { items, warning: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: usize, l: usize) -> Vec<ASTrapezoid> {
        let lens: Vec<usize> = (0..n).map(|i| 2 * n + l - 2 - 2 * i).collect();
        let total: usize = lens.iter().sum();
        let mut out = Vec::new();
        let mut digits = vec![0usize; total];
        'outer: loop {
            let mut rows = Vec::new();
            let mut k = 0;
            for &len in &lens {
                rows.push(digits[k..k + len].iter().map(|&d| d as i8 - 1).collect());
                k += len;
            }
            let t = ASTrapezoid::new(n, l, rows).unwrap();
            if t.is_valid() {
                out.push(t);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < 3 {
                    continue 'outer;
                }
                *d = 0;
            }
            break;
        }
        out.sort();
        out
    }

    #[test]
    fn matches_exhaustive_search() {
        for (n, l) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3)] {
            let got = enumerate_astrapezoids(n, l, NodeBudget::DEFAULT).unwrap();
            assert_eq!(got, brute_force(n, l), "({n},{l})");
            assert!(got.iter().all(|t| t.is_valid()));
        }
        assert_eq!(enumerate_astrapezoids(1, 3, NodeBudget::DEFAULT).unwrap().len(), 2);
    }

    #[test]
    fn symmetric_search_equals_filter() {
        for (n, l) in [(2, 3), (2, 5), (3, 1), (4, 3), (4, 5), (2, 7)] {
            let all = enumerate_astrapezoids(n, l, NodeBudget::DEFAULT).unwrap();
            let filtered: Vec<_> = all.into_iter().filter(is_vertically_symmetric).collect();
            let sym: Vec<_> = enumerate_vsast(n, l, NodeBudget::DEFAULT).unwrap().items.into_iter().map(|x| x.0).collect();
            assert_eq!(sym, filtered, "({n},{l})");
        }
    }

    #[test]
    fn one_by_one_trapezoids() {
        let all = enumerate_astrapezoids(1, 1, NodeBudget::DEFAULT).unwrap();
        assert_eq!(all.len(), 2);
        let zero = ASTrapezoid::new(1, 1, vec![vec![0]]).unwrap();
        assert_eq!(vsast_weight(&zero).unwrap(), WeightMonomial::new(0, 0));
    }

    #[test]
    fn single_row_centered_one_is_symmetric() {
        let t = ASTrapezoid::new(1, 5, vec![vec![0, 0, 1, 0, 0]]).unwrap();
        assert!(is_vertically_symmetric(&t));
        let cls = classify_columns(&t);
        assert_eq!(cls.count(ColumnTag::Zero), 4);
    }

    #[test]
    fn odd_n_with_wide_base_is_empty() {
        let r = enumerate_vsast(3, 3, NodeBudget::DEFAULT).unwrap();
        assert!(r.items.is_empty() && r.warning.is_some());
        assert!(matches!(enumerate_vsast(2, 4, NodeBudget::DEFAULT), Err(Error::InvalidParity { .. })));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(enumerate_astrapezoids(4, 5, NodeBudget(100)), Err(Error::ResourceBound { .. })));
    }

    #[test]
    fn vsast_has_half_n_one_columns() {
        for (n, l) in [(2, 3), (4, 3), (4, 5), (6, 3)] {
            for (t, _) in enumerate_vsast(n, l, NodeBudget::DEFAULT).unwrap().items {
                assert_eq!(classify_columns(&t).one_columns.len(), n / 2);
            }
        }
    }
}
