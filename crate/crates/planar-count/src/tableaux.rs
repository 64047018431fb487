//! Standard Young tableaux, row insertion, and descent-filtered pair counts.
//!
//! The counting route through this module: a configuration, read as a
//! permutation of [rn], maps under row insertion (RSK) to a pair of standard
//! tableaux of equal shape. Configurations that arise from r-regular
//! multigraphs are exactly those whose pair satisfies a block descent
//! condition, and the planar matching number is the column count of the
//! insertion tableau. Counting pairs by shape therefore counts multigraphs.

use crate::error::{invalid, Result};
use crate::exec;
use crate::multigraph::Configuration;
use num::BigInt;
use serde::{Deserialize, Serialize};

/// Standard Young tableau. Row and column indices are 0-based; entries are
/// the positive integers themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct YoungTableau {
    rows: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<RawTableau> for YoungTableau {
    type Error = crate::Error;
    fn try_from(raw: RawTableau) -> Result<Self> {
        YoungTableau::new(raw.rows)
    }
}

impl YoungTableau {
    pub fn empty() -> Self {
        YoungTableau { rows: Vec::new() }
    }

    /// Validates increasing rows and columns, weakly decreasing row lengths,
    /// positive distinct entries.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(invalid(format!("row {i} is empty")));
            }
            if i > 0 && row.len() > rows[i - 1].len() {
                return Err(invalid("row lengths must weakly decrease"));
            }
            for (j, &x) in row.iter().enumerate() {
                if x == 0 {
                    return Err(invalid("entries must be positive"));
                }
                if !seen.insert(x) {
                    return Err(invalid(format!("entry {x} repeated")));
                }
                if j > 0 && row[j - 1] >= x {
                    return Err(invalid(format!("row {i} not strictly increasing")));
                }
                if i > 0 && rows[i - 1][j] >= x {
                    return Err(invalid(format!("column {j} not strictly increasing")));
                }
            }
        }
        Ok(YoungTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Shape as the list of row lengths.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of columns, i.e. the length of the first row.
    pub fn column_count(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.rows.iter().any(|r| r.binary_search(&x).is_ok())
    }

    /// 0-based (row, column) of entry x, if present.
    pub fn position_of(&self, x: usize) -> Option<(usize, usize)> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Ok(j) = row.binary_search(&x) {
                return Some((i, j));
            }
        }
        None
    }

    /// Row insertion. Returns the grown tableau and the 0-based box where the
    /// bumping chain settled.
    pub fn row_insert(&self, x: usize) -> Result<(YoungTableau, (usize, usize))> {
        if x == 0 {
            return Err(invalid("entries must be positive"));
        }
        if self.contains(x) {
            return Err(invalid(format!("entry {x} already present")));
        }
        let mut t = self.clone();
        let pos = t.insert_mut(x);
        Ok((t, pos))
    }

    /// In-place bumping; caller guarantees x is fresh.
    fn insert_mut(&mut self, x: usize) -> (usize, usize) {
        let mut cur = x;
        let mut row = 0;
        loop {
            if row == self.rows.len() {
                self.rows.push(vec![cur]);
                return (row, 0);
            }
            let r = &mut self.rows[row];
            let j = r.partition_point(|&y| y < cur);
            if j == r.len() {
                r.push(cur);
                return (row, j);
            }
            std::mem::swap(&mut r[j], &mut cur);
            row += 1;
        }
    }
}

/// Insertion/recording pair of equal shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauPair {
    pub p: YoungTableau,
    pub q: YoungTableau,
}

impl TableauPair {
    pub fn new(p: YoungTableau, q: YoungTableau) -> Result<Self> {
        if p.shape() != q.shape() {
            return Err(invalid("tableau shapes differ"));
        }
        let m = q.len();
        if !is_standard_entry_set(&q, m) {
            return Err(invalid("recording tableau entries must be exactly 1..=m"));
        }
        Ok(TableauPair { p, q })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.p.shape()
    }
}

fn is_standard_entry_set(t: &YoungTableau, m: usize) -> bool {
    if t.len() != m {
        return false;
    }
    let mut seen = vec![false; m + 1];
    for row in t.rows() {
        for &x in row {
            if x > m || seen[x] {
                return false;
            }
            seen[x] = true;
        }
    }
    true
}

/// RSK row insertion of a permutation of 1..=m.
pub fn rsk(values: &[usize]) -> Result<TableauPair> {
    let m = values.len();
    let mut seen = vec![false; m + 1];
    for &x in values {
        if x == 0 || x > m || seen[x] {
            return Err(invalid("input must be a permutation of 1..=m"));
        }
        seen[x] = true;
    }
    let mut p = YoungTableau::empty();
    let mut q = YoungTableau::empty();
    for (step, &x) in values.iter().enumerate() {
        let (row, col) = p.insert_mut(x);
        debug_assert_eq!(col, q.rows.get(row).map_or(0, |r| r.len()));
        if row == q.rows.len() {
            q.rows.push(vec![step + 1]);
        } else {
            q.rows[row].push(step + 1);
        }
    }
    Ok(TableauPair { p, q })
}

/// RSK of a configuration under the identification of copy rank k with k+1.
pub fn rsk_configuration(c: &Configuration) -> TableauPair {
    let values: Vec<usize> = c.pairing().iter().map(|&v| v + 1).collect();
    rsk(&values).expect("a configuration is a permutation")
}

/// Inverse of [`rsk`]: reverse bumping in box order of the recording tableau.
pub fn inverse_rsk(pair: &TableauPair) -> Result<Vec<usize>> {
    let m = pair.q.len();
    if pair.p.shape() != pair.q.shape() {
        return Err(invalid("tableau shapes differ"));
    }
    if !is_standard_entry_set(&pair.q, m) {
        return Err(invalid("recording tableau entries must be exactly 1..=m"));
    }
    let mut p = pair.p.clone();
    let mut out = vec![0usize; m];
    for k in (1..=m).rev() {
        let (bi, bj) = pair.q.position_of(k).expect("entry set checked");
        if bj + 1 != p.rows[bi].len() {
            return Err(invalid(format!("entry {k} is not at a removable corner")));
        }
        let mut carry = p.rows[bi].pop().expect("non-empty row");
        if p.rows[bi].is_empty() {
            p.rows.pop();
        }
        for row in (0..bi).rev() {
            let r = &mut p.rows[row];
            let j = r.partition_point(|&y| y < carry);
            debug_assert!(j > 0, "reverse bump must find a smaller entry");
            std::mem::swap(&mut r[j - 1], &mut carry);
        }
        out[k - 1] = carry;
    }
    Ok(out)
}

/// Block descent conditions on a standard tableau with entries [rn], read on
/// the n blocks {r(i-1)+1, ..., r(i-1)+r}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockCondition {
    /// Each next entry of a block sits in a strictly lower row.
    StrictDescent,
    /// Each next entry of a block sits in a weakly higher row.
    WeakAscent,
}

/// Checks the block condition. Fails if the entry set is not exactly 1..=rn.
pub fn satisfies_block_condition(
    t: &YoungTableau,
    n: usize,
    r: usize,
    cond: BlockCondition,
) -> Result<bool> {
    let m = n * r;
    if !is_standard_entry_set(t, m) {
        return Err(invalid("tableau entries must be exactly 1..=rn"));
    }
    let mut row_of = vec![0usize; m + 1];
    for (i, row) in t.rows().iter().enumerate() {
        for &x in row {
            row_of[x] = i;
        }
    }
    for i in 0..n {
        for s in 1..r {
            let v = r * i + s;
            let ok = match cond {
                BlockCondition::StrictDescent => row_of[v] < row_of[v + 1],
                BlockCondition::WeakAscent => row_of[v + 1] <= row_of[v],
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Partitions of m with every part at most `max_part`, descending lex order.
pub fn partitions_bounded(m: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    rec(m, max_part, &mut cur, &mut out);
    out
}

/// All standard Young tableaux of the given shape, by recursive filling.
pub fn standard_tableaux(shape: &[usize]) -> Vec<YoungTableau> {
    let m: usize = shape.iter().sum();
    let mut filled = vec![0usize; shape.len()];
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        m: usize,
        shape: &[usize],
        filled: &mut [usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<YoungTableau>,
    ) {
        if k > m {
            out.push(YoungTableau { rows: rows.clone() });
            return;
        }
        for i in 0..shape.len() {
            let legal = filled[i] < shape[i] && (i == 0 || filled[i - 1] > filled[i]);
            if legal {
                rows[i].push(k);
                filled[i] += 1;
                rec(k + 1, m, shape, filled, rows, out);
                filled[i] -= 1;
                rows[i].pop();
            }
        }
    }
    rec(1, m, shape, &mut filled, &mut rows, &mut out);
    out
}

/// Sum over shapes of rn with at most d columns of the squared number of
/// standard tableaux satisfying the block condition.
pub fn count_tableau_pairs(n: usize, r: usize, d: usize, cond: BlockCondition) -> BigInt {
    let m = n * r;
    let shapes = partitions_bounded(m, d);
    exec::sum_bigint(shapes, move |shape| {
        let passing = standard_tableaux(&shape)
            .iter()
            .filter(|t| satisfies_block_condition(t, n, r, cond).expect("entries are 1..=rn"))
            .count();
        let c = BigInt::from(passing);
        &c * &c
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::multigraph::{enumerate_configurations, enumerate_multigraphs};

    fn tab(rows: &[&[usize]]) -> YoungTableau {
        YoungTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tableau_validation() {
        assert!(YoungTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(YoungTableau::new(vec![vec![3, 1]]).is_err());
        assert!(YoungTableau::new(vec![vec![2], vec![1]]).is_err());
        assert!(YoungTableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(YoungTableau::new(vec![vec![1, 1]]).is_err());
        assert!(YoungTableau::new(vec![vec![0]]).is_err());
    }

    #[test]
    fn row_insert_examples() {
        let (t, pos) = YoungTableau::empty().row_insert(5).unwrap();
        assert_eq!(t.rows(), &[vec![5]]);
        assert_eq!(pos, (0, 0));

        let (t, pos) = tab(&[&[2]]).row_insert(1).unwrap();
        assert_eq!(t.rows(), &[vec![1], vec![2]]);
        assert_eq!(pos, (1, 0));

        let (t, pos) = tab(&[&[1], &[2]]).row_insert(3).unwrap();
        assert_eq!(t.rows(), &[vec![1, 3], vec![2]]);
        assert_eq!(pos, (0, 1));

        assert!(tab(&[&[2]]).row_insert(2).is_err());
    }

    #[test]
    fn rsk_examples() {
        let pair = rsk(&[1, 2, 3]).unwrap();
        assert_eq!(pair.p, tab(&[&[1, 2, 3]]));
        assert_eq!(pair.q, tab(&[&[1, 2, 3]]));

        let pair = rsk(&[3, 2, 1]).unwrap();
        assert_eq!(pair.p, tab(&[&[1], &[2], &[3]]));
        assert_eq!(pair.q, tab(&[&[1], &[2], &[3]]));

        let pair = rsk(&[2, 1, 3]).unwrap();
        assert_eq!(pair.p, tab(&[&[1, 3], &[2]]));
        assert_eq!(pair.q, tab(&[&[1, 3], &[2]]));

        assert!(rsk(&[1, 1, 2]).is_err());
        assert!(rsk(&[0, 1]).is_err());
    }

    #[test]
    fn inverse_rsk_examples() {
        let pair = TableauPair::new(tab(&[&[1, 2, 3]]), tab(&[&[1, 2, 3]])).unwrap();
        assert_eq!(inverse_rsk(&pair).unwrap(), vec![1, 2, 3]);

        let pair = TableauPair::new(tab(&[&[1, 3], &[2]]), tab(&[&[1, 3], &[2]])).unwrap();
        assert_eq!(inverse_rsk(&pair).unwrap(), vec![2, 1, 3]);

        assert!(TableauPair::new(tab(&[&[1, 2]]), tab(&[&[1], &[2]])).is_err());
    }

    #[test]
    fn figure_pair_roundtrip() {
        let p = tab(&[&[1, 3], &[2, 5], &[4], &[6]]);
        let q = tab(&[&[1, 5], &[2, 6], &[3], &[4]]);
        let pair = TableauPair::new(p, q).unwrap();
        let perm = inverse_rsk(&pair).unwrap();
        assert_eq!(perm, vec![6, 4, 2, 1, 5, 3]);
        assert_eq!(rsk(&perm).unwrap(), pair);
    }

    #[test]
    fn roundtrip_exhaustive_m6() {
        let budget = Budget::default();
        for c in enumerate_configurations(6, 1, &budget).map(|c| c.unwrap()) {
            let values: Vec<usize> = c.pairing().iter().map(|&v| v + 1).collect();
            let pair = rsk(&values).unwrap();
            assert_eq!(inverse_rsk(&pair).unwrap(), values);
        }
    }

    #[test]
    fn strict_descent_examples() {
        let fig3_left = tab(&[&[1, 3], &[2, 5], &[4], &[6]]);
        assert!(satisfies_block_condition(&fig3_left, 3, 2, BlockCondition::StrictDescent).unwrap());
        assert!(!satisfies_block_condition(&tab(&[&[1, 2]]), 1, 2, BlockCondition::StrictDescent).unwrap());
        assert!(satisfies_block_condition(&tab(&[&[1], &[2]]), 1, 2, BlockCondition::StrictDescent).unwrap());
        assert!(satisfies_block_condition(&tab(&[&[2, 3]]), 1, 2, BlockCondition::StrictDescent).is_err());
    }

    #[test]
    fn weak_ascent_examples() {
        assert!(satisfies_block_condition(&tab(&[&[1, 2]]), 1, 2, BlockCondition::WeakAscent).unwrap());
        assert!(!satisfies_block_condition(&tab(&[&[1], &[2]]), 1, 2, BlockCondition::WeakAscent).unwrap());
        // r = 1 leaves nothing to check.
        assert!(satisfies_block_condition(&tab(&[&[1, 3], &[2]]), 3, 1, BlockCondition::WeakAscent).unwrap());
    }

    #[test]
    fn pair_count_examples() {
        assert_eq!(count_tableau_pairs(1, 2, 2, BlockCondition::StrictDescent), BigInt::from(1));
        assert_eq!(count_tableau_pairs(2, 2, 2, BlockCondition::StrictDescent), BigInt::from(3));
        assert_eq!(count_tableau_pairs(2, 1, 1, BlockCondition::StrictDescent), BigInt::from(1));
        assert_eq!(count_tableau_pairs(1, 2, 2, BlockCondition::WeakAscent), BigInt::from(1));
        assert_eq!(count_tableau_pairs(1, 2, 1, BlockCondition::WeakAscent), BigInt::from(0));
        assert_eq!(count_tableau_pairs(0, 2, 0, BlockCondition::StrictDescent), BigInt::from(1));
    }

    #[test]
    fn pair_count_catalan_for_r1_d2() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(count_tableau_pairs(n, 1, 2, BlockCondition::StrictDescent), BigInt::from(c));
        }
    }

    #[test]
    fn symmetry_of_inverse_permutation() {
        let budget = Budget::default();
        for m in 0..=6 {
            for c in enumerate_configurations(m, 1, &budget).map(|c| c.unwrap()) {
                let pair = rsk_configuration(&c);
                let inv = rsk_configuration(&c.transpose());
                assert_eq!(inv.p, pair.q);
                assert_eq!(inv.q, pair.p);
            }
        }
    }

    #[test]
    fn column_count_is_matching_number() {
        let budget = Budget::default();
        for m in 1..=6 {
            for c in enumerate_configurations(m, 1, &budget).map(|c| c.unwrap()) {
                let pair = rsk_configuration(&c);
                assert_eq!(pair.p.column_count(), c.planar_matching_number());
            }
        }
    }

    #[test]
    fn bumping_lemma_exhaustive_small() {
        let budget = Budget::default();
        for m in 2..=6 {
            for c in enumerate_configurations(m, 1, &budget).map(|c| c.unwrap()) {
                let vals: Vec<usize> = c.pairing().iter().map(|&v| v + 1).collect();
                let (x, xp) = (vals[m - 2], vals[m - 1]);
                let mut t = YoungTableau::empty();
                for &v in &vals[..m - 2] {
                    t = t.row_insert(v).unwrap().0;
                }
                let (t1, b) = t.row_insert(x).unwrap();
                let (_, bp) = t1.row_insert(xp).unwrap();
                if x <= xp {
                    assert!(b.1 < bp.1 && b.0 >= bp.0, "{vals:?} {b:?} {bp:?}");
                } else {
                    assert!(bp.1 <= b.1 && bp.0 > b.0, "{vals:?} {b:?} {bp:?}");
                }
            }
        }
    }

    #[test]
    fn block_runs_insert_in_descending_rows() {
        // Expanded multigraphs list each u-block's partners in decreasing
        // order; their insertion boxes must then walk strictly down.
        let budget = Budget::default();
        for (n, r) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (1, 5), (1, 6)] {
            if n * r > 6 {
                continue;
            }
            for g in enumerate_multigraphs(n, r, &budget).map(|g| g.unwrap()) {
                let c = g.expand();
                let mut t = YoungTableau::empty();
                let mut box_rows = Vec::new();
                for &v in c.pairing() {
                    let (nt, (row, _)) = t.row_insert(v + 1).unwrap();
                    t = nt;
                    box_rows.push(row);
                }
                for i in 0..n {
                    for s in 1..r {
                        assert!(
                            box_rows[r * i + s - 1] < box_rows[r * i + s],
                            "block {i} of {:?}",
                            g.mult()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn membership_matches_descent_and_width() {
        // A configuration comes from an r-regular multigraph with matching
        // number <= d exactly when both tableaux pass the strict descent
        // condition and have at most d columns.
        let budget = Budget::default();
        for (n, r) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (4, 1), (1, 6), (6, 1)] {
            if n * r > 6 {
                continue;
            }
            for c in enumerate_configurations(n, r, &budget).map(|c| c.unwrap()) {
                let is_expansion = c.project().expand() == c;
                let pair = rsk_configuration(&c);
                let both_pass = satisfies_block_condition(&pair.p, n, r, BlockCondition::StrictDescent).unwrap()
                    && satisfies_block_condition(&pair.q, n, r, BlockCondition::StrictDescent).unwrap();
                for d in 1..=n * r {
                    let member = is_expansion && c.planar_matching_number() <= d;
                    let tab_side = both_pass && pair.p.column_count() <= d;
                    assert_eq!(member, tab_side, "n={n} r={r} d={d} {:?}", c.pairing());
                }
            }
        }
    }

    #[test]
    fn partitions_and_fillings() {
        assert_eq!(partitions_bounded(4, 2), vec![vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions_bounded(0, 3), vec![Vec::<usize>::new()]);
        assert_eq!(partitions_bounded(3, 0).len(), 0);
        assert_eq!(standard_tableaux(&[2, 1]).len(), 2);
        assert_eq!(standard_tableaux(&[2, 2]).len(), 2);
        assert_eq!(standard_tableaux(&[]).len(), 1);
        // total fillings over shapes of 4 = involutions of S4 = 10
        let total: usize = partitions_bounded(4, 4).iter().map(|s| standard_tableaux(s).len()).sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn tableau_json_shape() {
        let t = tab(&[&[1, 3], &[2]]);
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"rows":[[1,3],[2]]}"#);
        let back: YoungTableau = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<YoungTableau>(r#"{"rows":[[2],[1]]}"#).is_err());
    }
}
