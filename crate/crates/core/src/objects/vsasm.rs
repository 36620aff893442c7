//! Vertically symmetric alternating sign matrices.

use super::halved::{HalvedPattern, HalvedShape, RowMode};
use super::{NodeBudget, NodeCounter};
use crate::error::{Error, Result};

fn is_asm(m: &[Vec<i8>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    let ok = |line: &mut dyn Iterator<Item = i8>| {
        let mut s = 0i8;
        for x in line {
            s += x;
            if !(0..=1).contains(&s) {
                return false;
            }
        }
        s == 1
    };
    (0..n).all(|i| ok(&mut m[i].iter().copied())) && (0..n).all(|j| ok(&mut m.iter().map(|r| r[j])))
}

pub fn is_vsasm(m: &[Vec<i8>]) -> bool {
    is_asm(m) && m.iter().all(|r| r.iter().eq(r.iter().rev()))
}

struct AsmSearch<'a> {
    size: usize,
    sums: Vec<u8>,
    rows: Vec<Vec<i8>>,
    out: Vec<Vec<Vec<i8>>>,
    counter: &'a mut NodeCounter,
}

impl AsmSearch<'_> {
    fn row(&mut self, i: usize) -> Result<()> {
        if i == self.size {
            if self.sums.iter().all(|&s| s == 1) {
                self.out.push(self.rows.clone());
            }
            return Ok(());
        }
        let mut r = vec![0i8; self.size];
        self.cell(i, 0, 0, &mut r)
    }

    fn cell(&mut self, i: usize, a: usize, prefix: i8, r: &mut Vec<i8>) -> Result<()> {
        self.counter.tick()?;
        if a == self.size {
            if prefix == 1 {
                self.rows.push(r.clone());
                self.row(i + 1)?;
                self.rows.pop();
            }
            return Ok(());
        }
        let old = self.sums[a];
        let mirror = self.size - 1 - a;
        let forced = (mirror < a).then(|| self.sums[mirror]);
        for new in 0..=1u8 {
            if forced.is_some_and(|f| f != new) {
                continue;
            }
            let d = new as i8 - old as i8;
            let p = prefix + d;
            if !(0..=1).contains(&p) {
                continue;
            }
            r[a] = d;
            self.sums[a] = new;
            self.cell(i, a + 1, p, r)?;
            self.sums[a] = old;
        }
        r[a] = 0;
        Ok(())
    }
}

/// All vertically symmetric alternating sign matrices of size `size`.
pub fn enumerate_vsasm(size: usize, budget: NodeBudget) -> Result<Vec<Vec<Vec<i8>>>> {
    let mut counter = NodeCounter::new(budget);
    let mut s = AsmSearch { size, sums: vec![0; size], rows: Vec::new(), out: Vec::new(), counter: &mut counter };
    s.row(0)?;
    Ok(s.out)
}

/// Maps an `N x N` VSASM to a halved monotone triangle of order `N-1`.
pub fn vsasm_to_hmt(m: &[Vec<i8>]) -> Result<HalvedPattern> {
    let size = m.len();
    if size.is_multiple_of(2) || !is_vsasm(m) {
        return Err(Error::Precondition("not a vertically symmetric ASM of odd size".into()));
    }
    let half = (size - 1) / 2;
    let mut sums = vec![0i64; half];
    let mut rows = Vec::with_capacity(size - 1);
    for (i, r) in m.iter().enumerate() {
        for (s, &x) in sums.iter_mut().zip(r) {
            *s += x as i64;
        }
        if i > 0 {
            rows.push((0..half).filter(|&a| sums[a] == 1).map(|a| a as i64 + 1).collect::<Vec<_>>());
        }
    }
    HalvedPattern::from_rows_top_down(HalvedShape::full(size - 1), RowMode::Strict, half as i64, &rows)
}
