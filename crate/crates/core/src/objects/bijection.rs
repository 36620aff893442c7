//! Correspondence between vertically symmetric trapezoids and halved trees.

use std::collections::BTreeSet;

use super::halved::{HalvedPattern, HalvedShape, RowMode};
use super::trapezoid::{classify_columns, is_vertically_symmetric, ASTrapezoid};
use crate::error::{Error, Result};

fn check_parameters(n: usize, l: usize) -> Result<()> {
    if !n.is_multiple_of(2) || n == 0 || l.is_multiple_of(2) || l < 3 {
        return Err(Error::InvalidParity { n, l });
    }
    Ok(())
}

/// Maps a vertically symmetric `(n, l)`-trapezoid (`n` even, `l` odd) to a halved
/// `(-c_1-1, ..., -c_{n/2}-1)`-tree of order `n-1` with bottom row `c` and bound `(l-5)/2`.
pub fn vsast_to_tree(t: &ASTrapezoid) -> Result<HalvedPattern> {
    let (n, l) = (t.n(), t.l());
    check_parameters(n, l)?;
    if !is_vertically_symmetric(t) {
        return Err(Error::NotSymmetric);
    }
    t.check().map_err(Error::Precondition)?;
    let center = t.center().expect("odd l");
    let center_label = t.label(center);
    let c = classify_columns(t).one_columns;
    if c.len() != n / 2 {
        return Err(Error::Precondition(format!("expected {} one-columns, found {}", n / 2, c.len())));
    }
    let s: Vec<usize> = c.iter().map(|&x| (-x - 1) as usize).collect();
    let shape = HalvedShape::new(n - 1, &s)?;
    let mut sums = vec![0i64; center + 1];
    let mut tree_rows = Vec::with_capacity(n - 1);
    for rho in 0..n {
        for (a, sum) in sums.iter_mut().enumerate().skip(rho) {
            *sum += t.entry(rho, a).expect("inside the left half") as i64;
        }
        let mut ones: Vec<i64> = (0..=center).filter(|&a| sums[a] == 1).map(|a| t.label(a)).collect();
        let has_center = ones.last() == Some(&center_label);
        if has_center != (rho % 2 == 0) {
            return Err(Error::Precondition("central column does not alternate from the top".into()));
        }
        if has_center {
            ones.pop();
        }
        if rho == 0 {
            continue;
        }
        let padded_limit = t.label(rho);
        tree_rows.push(ones.into_iter().filter(|&x| x >= padded_limit).collect::<Vec<_>>());
    }
    HalvedPattern::from_rows_top_down(shape, RowMode::Strict, (l as i64 - 5).div_euclid(2), &tree_rows)
}

/// Inverse of [`vsast_to_tree`].
pub fn tree_to_vsast(p: &HalvedPattern, l: usize) -> Result<ASTrapezoid> {
    let n = p.n() + 1;
    check_parameters(n, l)?;
    let bound = (l as i64 - 5).div_euclid(2);
    if p.b() != bound {
        return Err(Error::NotInImage(format!("bound {} differs from {bound}", p.b())));
    }
    let c = p.bottom_row();
    if c.windows(2).any(|w| w[0] >= w[1]) || c.iter().any(|&x| x < -(n as i64) || x > -1) {
        return Err(Error::NotInImage(format!("bottom row {c:?} is not a set of left column labels")));
    }
    let expected: Vec<usize> = c.iter().map(|&x| (-x - 1) as usize).collect();
    if p.shape().s() != expected.as_slice() {
        return Err(Error::NotInImage("truncation does not match the bottom row".into()));
    }
    let n_i = n as i64;
    let center_label = (l as i64 - 3) / 2;
    let width = 2 * n + l - 2;
    let center = n - 1 + (l - 1) / 2;
    let tree_rows = p.rows_top_down();
    let mut prev = vec![0i64; center + 1];
    let mut rows = Vec::with_capacity(n);
    for rho in 0..n {
        let mut ones: BTreeSet<i64> = c.iter().copied().filter(|&x| x < -n_i + rho as i64).collect();
        if rho >= 1 {
            ones.extend(tree_rows[rho - 1].iter().copied());
        }
        if rho % 2 == 0 {
            ones.insert(center_label);
        }
        let cur: Vec<i64> = (0..=center).map(|a| ones.contains(&(a as i64 - n_i)) as i64).collect();
        for a in 0..rho.min(center + 1) {
            if cur[a] != prev[a] {
                return Err(Error::NotInImage(format!("row {rho} changes a finished column")));
            }
        }
        let mut row = vec![0i8; width - 2 * rho];
        for a in rho..=center {
            let d = cur[a] - prev[a];
            row[a - rho] = d as i8;
            row[width - 1 - a - rho] = d as i8;
        }
        rows.push(row);
        prev = cur;
    }
    let t = ASTrapezoid::new(n, l, rows)?;
    t.check().map_err(Error::NotInImage)?;
    Ok(t)
}

/// Removes the bottom row of an `(n, 1)`-trapezoid, giving an `(n-1, 3)`-trapezoid.
///
/// Accepts vertically symmetric inputs with odd `n`, or any input whose bottom entry is 1
/// (an alternating sign triangle).
pub fn delete_bottom_row_n1(t: &ASTrapezoid) -> Result<ASTrapezoid> {
    let n = t.n();
    if t.l() != 1 || n < 2 {
        return Err(Error::Precondition("expected an (n,1)-trapezoid with n >= 2".into()));
    }
    t.check().map_err(Error::Precondition)?;
    let bottom = t.rows()[n - 1][0];
    let symmetric_odd = n % 2 == 1 && is_vertically_symmetric(t);
    if !(symmetric_odd || bottom == 1) {
        return Err(Error::Precondition("neither symmetric of odd order nor a triangle".into()));
    }
    let reduced = ASTrapezoid::new(n - 1, 3, t.rows()[..n - 1].to_vec())?;
    reduced.check().map_err(Error::Precondition)?;
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{enumerate_vsast, vsast_weight, NodeBudget};

    #[test]
    fn roundtrip_and_weights() {
        for (n, l) in [(2, 3), (2, 5), (2, 7), (4, 3), (4, 5), (6, 3)] {
            let list = enumerate_vsast(n, l, NodeBudget::DEFAULT).unwrap();
            assert!(!list.items.is_empty());
            for (t, w) in &list.items {
                let tree = vsast_to_tree(t).unwrap();
                assert_eq!(tree.weight(), *w, "({n},{l}) {t:?}");
                assert_eq!(&tree_to_vsast(&tree, l).unwrap(), t);
            }
        }
    }

    #[test]
    fn reduction_from_n1() {
        let three = enumerate_vsast(3, 1, NodeBudget::DEFAULT).unwrap().items;
        let two = enumerate_vsast(2, 3, NodeBudget::DEFAULT).unwrap().items;
        assert_eq!(three.len(), 2 * two.len());
        for (t, w) in &three {
            let r = delete_bottom_row_n1(t).unwrap();
            assert!(two.iter().any(|(x, _)| x == &r));
            assert_eq!(vsast_weight(&r).unwrap(), *w);
        }
        let one = enumerate_vsast(1, 1, NodeBudget::DEFAULT).unwrap().items;
        assert_eq!(one.len(), 2);
    }

    #[test]
    fn rejects_wrong_parameters() {
        let t = ASTrapezoid::new(1, 3, vec![vec![0, 1, 0]]).unwrap();
        assert!(matches!(vsast_to_tree(&t), Err(Error::InvalidParity { .. })));
    }
}
