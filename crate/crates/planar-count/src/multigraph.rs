//! Ordered bipartite multigraphs, configurations, and the maps between them.
//!
//! A multigraph lives on parts U and V of size n, both linearly ordered, and
//! is stored as its n x n multiplicity matrix. A *configuration* is a perfect
//! matching on the copy sets U x [r] and V x [r] (ranks are 0-based here;
//! copy (i, s) has rank i*r + s). `expand` sends an r-regular multigraph to
//! its canonical configuration, `project` collapses a configuration back to
//! the multiplicity matrix it covers.
//!
//! Two sizes are attached to either object: the planar *matching* number (the
//! longest chain of edges strictly increasing in both endpoint ranks) and the
//! planar *subgraph* number (weakly increasing chains, so edges may repeat or
//! share endpoints).

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use num::BigInt;
use serde::{Deserialize, Serialize};

/// r-regular bipartite multigraph on ordered parts of size n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMultigraph")]
pub struct BipartiteMultigraph {
    n: usize,
    r: usize,
    mult: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawMultigraph {
    n: usize,
    r: usize,
    mult: Vec<Vec<usize>>,
}

impl TryFrom<RawMultigraph> for BipartiteMultigraph {
    type Error = Error;
    fn try_from(raw: RawMultigraph) -> Result<Self> {
        BipartiteMultigraph::new(raw.n, raw.r, raw.mult)
    }
}

impl BipartiteMultigraph {
    /// Validates that `mult` is n x n with every row and column summing to r.
    pub fn new(n: usize, r: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        if mult.len() != n {
            return Err(invalid(format!("expected {n} rows, got {}", mult.len())));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            let sum: usize = row.iter().sum();
            if sum != r {
                return Err(invalid(format!("row {i} sums to {sum}, expected {r}")));
            }
        }
        for j in 0..n {
            let sum: usize = mult.iter().map(|row| row[j]).sum();
            if sum != r {
                return Err(invalid(format!("column {j} sums to {sum}, expected {r}")));
            }
        }
        Ok(BipartiteMultigraph { n, r, mult })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mult(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Edge multiset in row-major order, one entry per copy.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n * self.r);
        for (u, row) in self.mult.iter().enumerate() {
            for (v, &m) in row.iter().enumerate() {
                for _ in 0..m {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Size of the largest set of edges forming a strictly increasing chain.
    pub fn planar_matching_number(&self) -> usize {
        matching_number(&self.edges())
    }

    /// Size of the largest multiset of edges forming a weakly increasing chain.
    pub fn planar_subgraph_number(&self) -> usize {
        subgraph_number(&self.edges())
    }

    /// Number of configurations projecting onto this multigraph:
    /// (r!)^(2n) / prod_e mult(e)!.
    pub fn configuration_count(&self) -> BigInt {
        let mut num = factorial(self.r).pow(2 * self.n as u32);
        for row in &self.mult {
            for &m in row {
                num /= factorial(m);
            }
        }
        num
    }

    /// Canonical configuration covering this multigraph.
    ///
    /// For an edge (u, v) of multiplicity t, let i be the number of edges at u
    /// going to later vertices and j the number of edges at v coming from
    /// later vertices; copy u^(i+s) pairs with v^(j+t-s+1) for s in 1..=t.
    /// Within each u-block the partner ranks come out strictly decreasing.
    pub fn expand(&self) -> Configuration {
        let (n, r) = (self.n, self.r);
        let mut pairing = vec![0usize; n * r];
        for u in 0..n {
            for v in 0..n {
                let t = self.mult[u][v];
                if t == 0 {
                    continue;
                }
                let i: usize = self.mult[u][v + 1..].iter().sum();
                let j: usize = (u + 1..n).map(|uu| self.mult[uu][v]).sum();
                for s in 1..=t {
                    let urank = u * r + (i + s) - 1;
                    let vrank = v * r + (j + t - s + 1) - 1;
                    pairing[urank] = vrank;
                }
            }
        }
        Configuration { n, r, pairing }
    }
}

/// Perfect matching between the rn copies of U and of V.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "RawConfiguration", try_from = "RawConfiguration")]
pub struct Configuration {
    n: usize,
    r: usize,
    pairing: Vec<usize>,
}

/// Wire format: pairing is 1-based there, 0-based in memory.
#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    n: usize,
    r: usize,
    pairing: Vec<usize>,
}

impl From<Configuration> for RawConfiguration {
    fn from(c: Configuration) -> Self {
        RawConfiguration {
            n: c.n,
            r: c.r,
            pairing: c.pairing.iter().map(|&v| v + 1).collect(),
        }
    }
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;
    fn try_from(raw: RawConfiguration) -> Result<Self> {
        for &v in &raw.pairing {
            if v == 0 {
                return Err(invalid("pairing entries are 1-based; found 0"));
            }
        }
        Configuration::new(raw.n, raw.r, raw.pairing.iter().map(|&v| v - 1).collect())
    }
}

impl Configuration {
    /// Validates that `pairing` is a permutation of 0..r*n.
    pub fn new(n: usize, r: usize, pairing: Vec<usize>) -> Result<Self> {
        let m = n * r;
        if pairing.len() != m {
            return Err(invalid(format!("pairing has length {}, expected {m}", pairing.len())));
        }
        let mut seen = vec![false; m];
        for &v in &pairing {
            if v >= m {
                return Err(invalid(format!("pairing value {v} out of range 0..{m}")));
            }
            if seen[v] {
                return Err(invalid(format!("pairing value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Configuration { n, r, pairing })
    }

    pub fn identity(n: usize, r: usize) -> Self {
        Configuration { n, r, pairing: (0..n * r).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// 0-based partner rank for each U-copy rank.
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.pairing.iter().copied().enumerate().collect()
    }

    pub fn planar_matching_number(&self) -> usize {
        matching_number(&self.edges())
    }

    pub fn planar_subgraph_number(&self) -> usize {
        // Copy ranks are distinct, so weak and strict chains on a
        // configuration only differ through the rank order itself.
        subgraph_number(&self.edges())
    }

    /// Multiplicity matrix covered by this configuration.
    pub fn project(&self) -> BipartiteMultigraph {
        let (n, r) = (self.n, self.r);
        let mut mult = vec![vec![0usize; n]; n];
        for (urank, &vrank) in self.pairing.iter().enumerate() {
            mult[urank / r][vrank / r] += 1;
        }
        BipartiteMultigraph { n, r, mult }
    }

    /// Inverse matching (swap the roles of U and V).
    pub fn transpose(&self) -> Configuration {
        let mut inv = vec![0usize; self.pairing.len()];
        for (u, &v) in self.pairing.iter().enumerate() {
            inv[v] = u;
        }
        Configuration { n: self.n, r: self.r, pairing: inv }
    }
}

/// Injective partial matching from U-copy ranks into V-copy ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiConfiguration {
    n: usize,
    r: usize,
    pairs: Vec<Option<usize>>,
}

impl QuasiConfiguration {
    pub fn new(n: usize, r: usize, pairs: Vec<Option<usize>>) -> Result<Self> {
        let m = n * r;
        if pairs.len() != m {
            return Err(invalid(format!("expected {m} slots, got {}", pairs.len())));
        }
        let mut seen = vec![false; m];
        for v in pairs.iter().flatten() {
            if *v >= m {
                return Err(invalid(format!("partner rank {v} out of range 0..{m}")));
            }
            if seen[*v] {
                return Err(invalid(format!("partner rank {v} used twice")));
            }
            seen[*v] = true;
        }
        Ok(QuasiConfiguration { n, r, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn pairs(&self) -> &[Option<usize>] {
        &self.pairs
    }

    pub fn matched_edges(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.pairs.iter().all(Option::is_some)
    }

    pub fn to_configuration(&self) -> Option<Configuration> {
        let pairing: Option<Vec<usize>> = self.pairs.iter().copied().collect();
        pairing.map(|pairing| Configuration { n: self.n, r: self.r, pairing })
    }
}

/// Longest strictly increasing chain in a list of (u, v) edges.
///
/// Sorting by u ascending and v descending turns the chain condition into a
/// strictly increasing subsequence of the v values, found by patience sorting.
pub(crate) fn matching_number(edges: &[(usize, usize)]) -> usize {
    let mut es = edges.to_vec();
    es.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut tails: Vec<usize> = Vec::new();
    for &(_, v) in &es {
        let pos = tails.partition_point(|&x| x < v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// Longest weakly increasing chain in a list of (u, v) edges.
pub(crate) fn subgraph_number(edges: &[(usize, usize)]) -> usize {
    let mut es = edges.to_vec();
    es.sort();
    let mut tails: Vec<usize> = Vec::new();
    for &(_, v) in &es {
        let pos = tails.partition_point(|&x| x <= v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

pub(crate) fn factorial(k: usize) -> BigInt {
    let mut f = BigInt::from(1);
    for i in 2..=k {
        f *= i;
    }
    f
}

/// All n x n multiplicity matrices with row and column sums r, ascending
/// lexicographic in row-major entry order. Each emitted matrix charges one
/// unit of `budget`.
pub fn enumerate_multigraphs<'a>(
    n: usize,
    r: usize,
    budget: &'a Budget,
) -> impl Iterator<Item = Result<BipartiteMultigraph>> + 'a {
    MultigraphStream::new(n, r, budget)
}

struct MultigraphStream<'a> {
    n: usize,
    r: usize,
    entries: Vec<usize>,
    col_rem: Vec<usize>,
    started: bool,
    done: bool,
    budget: &'a Budget,
}

impl<'a> MultigraphStream<'a> {
    fn new(n: usize, r: usize, budget: &'a Budget) -> Self {
        MultigraphStream {
            n,
            r,
            entries: vec![0; n * n],
            col_rem: vec![r; n],
            started: false,
            done: false,
            budget,
        }
    }

    fn row_of(&self, pos: usize) -> usize {
        pos / self.n
    }

    /// Row remainder at `pos` given entries before it in the same row.
    fn row_rem_at(&self, pos: usize) -> usize {
        let row_start = self.row_of(pos) * self.n;
        self.r - self.entries[row_start..pos].iter().sum::<usize>()
    }

    /// Smallest feasible completion of positions `from..`, given col_rem.
    /// Returns false when the current prefix cannot be completed.
    fn fill_min(&mut self, from: usize) -> bool {
        let n = self.n;
        for pos in from..n * n {
            let j = pos % n;
            let rem = self.row_rem_at(pos);
            let later: usize = self.col_rem[j + 1..].iter().sum();
            let lo = rem.saturating_sub(later);
            if lo > rem || lo > self.col_rem[j] {
                return false;
            }
            self.entries[pos] = lo;
            self.col_rem[j] -= lo;
        }
        true
    }

    /// Backtrack to the last position whose entry can grow, bump it, refill.
    fn advance(&mut self) -> bool {
        let n = self.n;
        let mut pos = n * n;
        while pos > 0 {
            pos -= 1;
            let j = pos % n;
            // Undo this entry.
            self.col_rem[j] += self.entries[pos];
            let rem = self.row_rem_at(pos);
            let e = self.entries[pos] + 1;
            // Bigger entries keep the rest of the row feasible (the lower
            // bound rem - later only caps entries from below).
            if e <= rem && e <= self.col_rem[j] {
                self.entries[pos] = e;
                self.col_rem[j] -= e;
                if self.fill_min(pos + 1) {
                    return true;
                }
                // Completion never fails once the prefix is feasible.
                unreachable!("feasible prefix must complete");
            }
            self.entries[pos] = 0;
        }
        false
    }

    fn snapshot(&self) -> BipartiteMultigraph {
        let mult: Vec<Vec<usize>> =
            self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).collect();
        BipartiteMultigraph { n: self.n, r: self.r, mult }
    }
}

impl Iterator for MultigraphStream<'_> {
    type Item = Result<BipartiteMultigraph>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let have = if !self.started {
            self.started = true;
            self.fill_min(0)
        } else {
            self.advance()
        };
        if !have {
            self.done = true;
            return None;
        }
        if let Err(e) = self.budget.charge() {
            self.done = true;
            return Some(Err(e));
        }
        Some(Ok(self.snapshot()))
    }
}

/// All configurations on n, r in lexicographic pairing order, budget-charged.
pub fn enumerate_configurations<'a>(
    n: usize,
    r: usize,
    budget: &'a Budget,
) -> impl Iterator<Item = Result<Configuration>> + 'a {
    let m = n * r;
    let mut pairing: Vec<usize> = (0..m).collect();
    let mut first = true;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        if first {
            first = false;
        } else if !next_permutation(&mut pairing) {
            done = true;
            return None;
        }
        if let Err(e) = budget.charge() {
            done = true;
            return Some(Err(e));
        }
        Some(Ok(Configuration { n, r, pairing: pairing.clone() }))
    })
}

pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, r: usize, mult: &[&[usize]]) -> BipartiteMultigraph {
        BipartiteMultigraph::new(n, r, mult.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn collect_graphs(n: usize, r: usize) -> Vec<BipartiteMultigraph> {
        let budget = Budget::default();
        enumerate_multigraphs(n, r, &budget).map(|g| g.unwrap()).collect()
    }

    #[test]
    fn rejects_bad_margins() {
        assert!(BipartiteMultigraph::new(2, 2, vec![vec![2, 0], vec![1, 1]]).is_err());
        assert!(BipartiteMultigraph::new(2, 2, vec![vec![1, 1]]).is_err());
        assert!(BipartiteMultigraph::new(1, 2, vec![vec![2]]).is_ok());
    }

    #[test]
    fn matching_number_examples() {
        assert_eq!(graph(1, 2, &[&[2]]).planar_matching_number(), 1);
        assert_eq!(graph(3, 1, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).planar_matching_number(), 3);
        assert_eq!(graph(2, 2, &[&[0, 2], &[2, 0]]).planar_matching_number(), 1);
    }

    #[test]
    fn subgraph_number_examples() {
        assert_eq!(graph(1, 2, &[&[2]]).planar_subgraph_number(), 2);
        assert_eq!(graph(2, 2, &[&[0, 2], &[2, 0]]).planar_subgraph_number(), 2);
        assert_eq!(graph(3, 1, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).planar_subgraph_number(), 3);
    }

    #[test]
    fn expansion_of_double_edge() {
        let c = graph(1, 2, &[&[2]]).expand();
        assert_eq!(c.pairing(), &[1, 0]);
        assert_eq!(c.planar_matching_number(), 1);
    }

    #[test]
    fn expansion_of_identity_is_identity() {
        let g = graph(3, 1, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(g.expand(), Configuration::identity(3, 1));
    }

    #[test]
    fn expansion_preserves_matching_number_and_projects_back() {
        for (n, r) in [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (1, 6), (6, 1)] {
            if n * r > 6 {
                continue;
            }
            for g in collect_graphs(n, r) {
                let c = g.expand();
                assert_eq!(c.planar_matching_number(), g.planar_matching_number(), "{g:?}");
                assert_eq!(c.project(), g);
            }
        }
    }

    #[test]
    fn transpose_is_involution_preserving_matching_number() {
        let budget = Budget::default();
        for c in enumerate_configurations(4, 1, &budget).map(|c| c.unwrap()) {
            let t = c.transpose();
            assert_eq!(t.transpose(), c);
            assert_eq!(t.planar_matching_number(), c.planar_matching_number());
        }
    }

    #[test]
    fn enumeration_order_and_counts() {
        let gs = collect_graphs(2, 2);
        let mats: Vec<_> = gs.iter().map(|g| g.mult().to_vec()).collect();
        assert_eq!(
            mats,
            vec![
                vec![vec![0, 2], vec![2, 0]],
                vec![vec![1, 1], vec![1, 1]],
                vec![vec![2, 0], vec![0, 2]],
            ]
        );
        assert_eq!(collect_graphs(1, 2).len(), 1);
        assert_eq!(collect_graphs(3, 1).len(), 6);
        assert_eq!(collect_graphs(4, 2).len(), 282);
        assert_eq!(collect_graphs(0, 3).len(), 1);
    }

    #[test]
    fn enumeration_respects_budget() {
        let budget = Budget::new(5);
        let items: Vec<_> = enumerate_multigraphs(3, 1, &budget).collect();
        assert_eq!(items.len(), 6);
        assert!(items[..5].iter().all(|i| i.is_ok()));
        assert_eq!(items[5], Err(Error::BudgetExceeded { budget: 5 }));
    }

    #[test]
    fn configuration_enumeration_is_lex() {
        let budget = Budget::default();
        let cs: Vec<_> = enumerate_configurations(3, 1, &budget).map(|c| c.unwrap()).collect();
        assert_eq!(cs.len(), 6);
        assert_eq!(cs[0].pairing(), &[0, 1, 2]);
        assert_eq!(cs[1].pairing(), &[0, 2, 1]);
        assert_eq!(cs[5].pairing(), &[2, 1, 0]);
    }

    #[test]
    fn configuration_counts_sum_to_factorial() {
        assert_eq!(graph(1, 2, &[&[2]]).configuration_count(), BigInt::from(2));
        for (n, r) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 2), (1, 5), (5, 1), (1, 6), (6, 1)] {
            if n * r > 6 {
                continue;
            }
            let total: BigInt = collect_graphs(n, r).iter().map(|g| g.configuration_count()).sum();
            assert_eq!(total, factorial(n * r), "n={n} r={r}");
        }
    }

    #[test]
    fn two_rows_of_five_force_a_monotone_triple() {
        // Erdos-Szekeres at d = 2: among 5 one-regular edges some 3 form a
        // strictly increasing or strictly decreasing chain.
        let budget = Budget::default();
        for c in enumerate_configurations(5, 1, &budget).map(|c| c.unwrap()) {
            let fwd = c.planar_matching_number();
            let rev_edges: Vec<_> =
                c.edges().iter().map(|&(u, v)| (u, 4 - v)).collect();
            let rev = matching_number(&rev_edges);
            assert!(fwd >= 3 || rev >= 3, "{:?}", c.pairing());
        }
    }

    #[test]
    fn quasi_configuration_validation() {
        assert!(QuasiConfiguration::new(2, 1, vec![Some(0), Some(0)]).is_err());
        assert!(QuasiConfiguration::new(2, 1, vec![Some(2), None]).is_err());
        let q = QuasiConfiguration::new(2, 1, vec![Some(1), None]).unwrap();
        assert!(!q.is_full());
        assert_eq!(q.to_configuration(), None);
        let full = QuasiConfiguration::new(2, 1, vec![Some(1), Some(0)]).unwrap();
        assert_eq!(full.to_configuration().unwrap().pairing(), &[1, 0]);
    }

    #[test]
    fn multigraph_json_round_trip() {
        let g = graph(2, 2, &[&[1, 1], &[1, 1]]);
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, r#"{"n":2,"r":2,"mult":[[1,1],[1,1]]}"#);
        let back: BipartiteMultigraph = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"n":2,"r":2,"mult":[[2,0],[1,1]]}"#;
        assert!(serde_json::from_str::<BipartiteMultigraph>(bad).is_err());
    }

    #[test]
    fn configuration_json_is_one_based() {
        let c = graph(1, 2, &[&[2]]).expand();
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(js, r#"{"n":1,"r":2,"pairing":[2,1]}"#);
        let back: Configuration = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Configuration>(r#"{"n":1,"r":2,"pairing":[0,1]}"#).is_err());
        assert!(serde_json::from_str::<Configuration>(r#"{"n":1,"r":2,"pairing":[1,1]}"#).is_err());
    }
}
