//! Lattice walks with unit steps, signed sums over Toeplitz endpoints, and
//! the crossing correspondence between walks and configurations.
//!
//! A walk records steps ±e_j in Z^d. The counting route works with the
//! representative form (all positive steps first): labels come in blocks of
//! r, one block per vertex, and the blocks are non-increasing or strictly
//! increasing depending on the variant. Signed sums of walk counts over the
//! d! Toeplitz endpoints collapse, through a sign-reversing involution, to
//! the number of regular multigraphs with bounded planar matching number.

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::exec;
use crate::multigraph::{factorial, next_permutation, Configuration, QuasiConfiguration};
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Signed sums run over all d! permutations; past this the factor table
/// dwarfs anything the exact routes are asked to certify.
pub const MAX_SIGNED_DIMENSION: usize = 8;

/// Cap on distinct label-count vectors held by the block DP.
pub const STATE_LIMIT: usize = 10_000_000;

/// Walk in Z^d given by signed unit steps: step s moves by sign(s)·e_{|s|}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWalk")]
pub struct Walk {
    d: usize,
    steps: Vec<i32>,
}

#[derive(Deserialize)]
struct RawWalk {
    d: usize,
    steps: Vec<i32>,
}

impl TryFrom<RawWalk> for Walk {
    type Error = Error;
    fn try_from(raw: RawWalk) -> Result<Self> {
        Walk::new(raw.d, raw.steps)
    }
}

impl Walk {
    pub fn new(d: usize, steps: Vec<i32>) -> Result<Self> {
        for &s in &steps {
            if s == 0 || s.unsigned_abs() as usize > d {
                return Err(invalid(format!("step {s} is not a signed direction in 1..={d}")));
            }
        }
        Ok(Walk { d, steps })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn steps(&self) -> &[i32] {
        &self.steps
    }

    pub fn endpoint(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.d];
        for &s in &self.steps {
            p[s.unsigned_abs() as usize - 1] += s.signum() as i64;
        }
        p
    }
}

/// Ordering imposed on each length-r label block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockOrder {
    /// Blocks are weakly decreasing (multisets of size r).
    Nonincreasing,
    /// Blocks are strictly increasing (r-subsets of [d]).
    Increasing,
}

/// Walk in representative form: rn positive steps with labels `a`, then rn
/// negative steps with labels `b`, grouped into n blocks of r per side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRepresentativeWalk")]
pub struct RepresentativeWalk {
    d: usize,
    n: usize,
    r: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

#[derive(Deserialize)]
struct RawRepresentativeWalk {
    d: usize,
    n: usize,
    r: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl TryFrom<RawRepresentativeWalk> for RepresentativeWalk {
    type Error = Error;
    fn try_from(raw: RawRepresentativeWalk) -> Result<Self> {
        RepresentativeWalk::new(raw.d, raw.n, raw.r, raw.a, raw.b)
    }
}

impl RepresentativeWalk {
    pub fn new(d: usize, n: usize, r: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let m = n * r;
        if a.len() != m || b.len() != m {
            return Err(invalid(format!("label sequences must have length rn = {m}")));
        }
        for &x in a.iter().chain(&b) {
            if x == 0 || x > d {
                return Err(invalid(format!("label {x} outside 1..={d}")));
            }
        }
        Ok(RepresentativeWalk { d, n, r, a, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn positive_labels(&self) -> &[usize] {
        &self.a
    }

    pub fn negative_labels(&self) -> &[usize] {
        &self.b
    }

    pub fn to_walk(&self) -> Walk {
        let steps = self
            .a
            .iter()
            .map(|&x| x as i32)
            .chain(self.b.iter().map(|&x| -(x as i32)))
            .collect();
        Walk { d: self.d, steps }
    }

    pub fn endpoint(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.d];
        for &x in &self.a {
            p[x - 1] += 1;
        }
        for &x in &self.b {
            p[x - 1] -= 1;
        }
        p
    }

    /// True when every length-r block on both sides obeys the order.
    pub fn is_block_ordered(&self, order: BlockOrder) -> bool {
        let ok = |seq: &[usize]| {
            seq.chunks(self.r.max(1)).all(|block| {
                block.windows(2).all(|w| match order {
                    BlockOrder::Nonincreasing => w[0] >= w[1],
                    BlockOrder::Increasing => w[0] < w[1],
                })
            })
        };
        ok(&self.a) && ok(&self.b)
    }
}

/// Endpoint T(π) = (1−π(1), ..., d−π(d)) together with π and its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzPoint {
    perm: Vec<usize>,
    point: Vec<i64>,
    sign: i8,
}

impl ToeplitzPoint {
    pub fn from_permutation(perm: Vec<usize>) -> Result<Self> {
        let d = perm.len();
        let mut seen = vec![false; d + 1];
        for &v in &perm {
            if v == 0 || v > d || seen[v] {
                return Err(invalid("not a permutation of 1..=d"));
            }
            seen[v] = true;
        }
        let point = perm.iter().enumerate().map(|(i, &v)| (i + 1) as i64 - v as i64).collect();
        let mut sign = 1i8;
        for i in 0..d {
            for j in i + 1..d {
                if perm[i] > perm[j] {
                    sign = -sign;
                }
            }
        }
        Ok(ToeplitzPoint { perm, point, sign })
    }

    /// Classifies a lattice point: T(π) determines π by π(i) = i − p_i.
    pub fn at(point: &[i64]) -> Option<ToeplitzPoint> {
        let d = point.len();
        let mut perm = Vec::with_capacity(d);
        for (i, &p) in point.iter().enumerate() {
            let v = (i + 1) as i64 - p;
            if v < 1 || v > d as i64 {
                return None;
            }
            perm.push(v as usize);
        }
        ToeplitzPoint::from_permutation(perm).ok()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn point(&self) -> &[i64] {
        &self.point
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }
}

/// All d! Toeplitz points, in lex order of the generating permutation.
pub fn toeplitz_points(d: usize) -> Vec<ToeplitzPoint> {
    let mut perm: Vec<usize> = (1..=d).collect();
    let mut out = Vec::new();
    loop {
        out.push(ToeplitzPoint::from_permutation(perm.clone()).expect("valid by construction"));
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

/// Single blocks in ascending lex order of their label tuples.
fn block_tuples(d: usize, r: usize, order: BlockOrder) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(d: usize, r: usize, order: BlockOrder, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let range = match (order, cur.last()) {
            (_, None) => 1..=d,
            (BlockOrder::Nonincreasing, Some(&prev)) => 1..=prev,
            (BlockOrder::Increasing, Some(&prev)) => prev + 1..=d,
        };
        for v in range {
            cur.push(v);
            rec(d, r, order, cur, out);
            cur.pop();
        }
    }
    rec(d, r, order, &mut cur, &mut out);
    out
}

fn tally(block: &[usize], d: usize) -> Vec<i16> {
    let mut c = vec![0i16; d];
    for &x in block {
        c[x - 1] += 1;
    }
    c
}

/// Label-count distribution of `blocks` ordered blocks: maps each count
/// vector c to the number of block sequences realizing it. A block is
/// determined by its own count vector, so the DP walks count space directly.
pub(crate) fn block_count_table(
    d: usize,
    blocks: usize,
    r: usize,
    order: BlockOrder,
) -> Result<HashMap<Vec<i16>, BigInt>> {
    let steps: Vec<Vec<i16>> = block_tuples(d, r, order).iter().map(|b| tally(b, d)).collect();
    let mut table = HashMap::from([(vec![0i16; d], BigInt::one())]);
    for _ in 0..blocks {
        let mut next: HashMap<Vec<i16>, BigInt> = HashMap::new();
        for (c, cnt) in &table {
            for s in &steps {
                let key: Vec<i16> = c.iter().zip(s).map(|(x, y)| x + y).collect();
                *next.entry(key).or_default() += cnt;
            }
        }
        if next.len() > STATE_LIMIT {
            return Err(Error::StateLimit { states: next.len(), limit: STATE_LIMIT });
        }
        table = next;
    }
    Ok(table)
}

/// Number of label sequences of n blocks with value k used c_k times.
/// Infeasible count vectors give 0.
pub fn count_block_sequences(
    d: usize,
    n: usize,
    r: usize,
    c: &[usize],
    order: BlockOrder,
) -> Result<BigInt> {
    if c.len() != d {
        return Err(invalid(format!("count vector must have length d = {d}")));
    }
    if c.iter().sum::<usize>() != n * r {
        return Ok(BigInt::zero());
    }
    let key: Vec<i16> = c.iter().map(|&x| x as i16).collect();
    Ok(block_count_table(d, n, r, order)?.remove(&key).unwrap_or_default())
}

/// Number of representative walks with n blocks per side ending at p.
pub fn count_restricted_walks(
    d: usize,
    n: usize,
    r: usize,
    p: &[i64],
    order: BlockOrder,
) -> Result<BigInt> {
    count_restricted_walks_uneven(d, n, n, r, p, order)
}

/// Same count with independently many positive and negative blocks.
pub fn count_restricted_walks_uneven(
    d: usize,
    blocks_pos: usize,
    blocks_neg: usize,
    r: usize,
    p: &[i64],
    order: BlockOrder,
) -> Result<BigInt> {
    if p.len() != d {
        return Err(invalid(format!("endpoint must have dimension d = {d}")));
    }
    let reach = (blocks_pos as i64 - blocks_neg as i64) * r as i64;
    if p.iter().sum::<i64>() != reach {
        return Ok(BigInt::zero());
    }
    let pos = block_count_table(d, blocks_pos, r, order)?;
    let neg = if blocks_pos == blocks_neg {
        None
    } else {
        Some(block_count_table(d, blocks_neg, r, order)?)
    };
    let neg = neg.as_ref().unwrap_or(&pos);
    let mut total = BigInt::zero();
    for (cp, np) in &pos {
        let cm: Option<Vec<i16>> = cp
            .iter()
            .zip(p)
            .map(|(&x, &pk)| {
                let v = x as i64 - pk;
                (0..=i16::MAX as i64).contains(&v).then_some(v as i16)
            })
            .collect();
        if let Some(nm) = cm.and_then(|cm| neg.get(&cm)) {
            total += np * nm;
        }
    }
    Ok(total)
}

/// Σ_π sign(π) · |walks to T(π)| over all π in S_d. Equals the number of
/// r-regular multigraphs on n+n vertices with planar matching number at
/// most d (non-increasing blocks) or planar subgraph number at most d
/// (increasing blocks).
pub fn signed_toeplitz_sum(d: usize, n: usize, r: usize, order: BlockOrder) -> Result<BigInt> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if d > MAX_SIGNED_DIMENSION {
        return Err(Error::DimensionTooLarge { d, max: MAX_SIGNED_DIMENSION });
    }
    let table = block_count_table(d, n, r, order)?;
    let signs: HashMap<Vec<i16>, i8> = toeplitz_points(d)
        .into_iter()
        .map(|t| (t.point.iter().map(|&x| x as i16).collect(), t.sign))
        .collect();
    let entries: Vec<(Vec<i16>, BigInt)> = table.iter().map(|(c, v)| (c.clone(), v.clone())).collect();
    let total = exec::sum_bigint(entries, |(cp, np)| {
        let mut acc = BigInt::zero();
        let mut diff = vec![0i16; cp.len()];
        for (cm, nm) in &table {
            for (t, (x, y)) in diff.iter_mut().zip(cp.iter().zip(cm)) {
                *t = x - y;
            }
            if let Some(&s) = signs.get(&diff) {
                let prod = &np * nm;
                if s > 0 {
                    acc += prod;
                } else {
                    acc -= prod;
                }
            }
        }
        acc
    });
    Ok(total)
}

/// Signed Toeplitz sum over walks with freely interleaved steps: every
/// interleaving of a representative walk is counted, giving C(2m,m) times
/// the representative sum with singleton blocks. Equals C(2m,m) u_m(d).
pub fn signed_interleaved_sum(d: usize, m: usize) -> Result<BigInt> {
    let central = factorial(2 * m) / (factorial(m) * factorial(m));
    Ok(central * signed_toeplitz_sum(d, m, 1, BlockOrder::Nonincreasing)?)
}

/// Crossing pairing: within each label class k, the earliest positive ranks
/// are matched to the latest negative ranks in reverse order, as far as the
/// smaller side reaches.
pub fn quasi_configuration(w: &RepresentativeWalk) -> QuasiConfiguration {
    let m = w.a.len();
    let mut pairs: Vec<Option<usize>> = vec![None; m];
    for k in 1..=w.d {
        let pos: Vec<usize> = (0..m).filter(|&i| w.a[i] == k).collect();
        let neg: Vec<usize> = (0..m).filter(|&i| w.b[i] == k).collect();
        let t = pos.len().min(neg.len());
        for i in 0..t {
            pairs[pos[i]] = Some(neg[neg.len() - 1 - i]);
        }
    }
    QuasiConfiguration::new(w.n, w.r, pairs).expect("crossing rule pairs distinct ranks")
}

/// Profile walk of a configuration in dimension rn: each rank is labeled by
/// the size of the largest planar matching ending at its edge.
pub fn profile_walk(f: &Configuration) -> RepresentativeWalk {
    profile_walk_in_dimension(f, f.n() * f.r()).expect("labels never exceed rn")
}

/// Profile walk in an explicit ambient dimension; fails when some label
/// exceeds d, i.e. when the planar matching number of f exceeds d.
pub fn profile_walk_in_dimension(f: &Configuration, d: usize) -> Result<RepresentativeWalk> {
    let pairing = f.pairing();
    let m = pairing.len();
    let mut a = vec![0usize; m];
    let mut b = vec![0usize; m];
    for u in 0..m {
        let mut best = 0;
        for u2 in 0..u {
            if pairing[u2] < pairing[u] {
                best = best.max(a[u2]);
            }
        }
        a[u] = best + 1;
        b[pairing[u]] = a[u];
    }
    if let Some(&big) = a.iter().find(|&&x| x > d) {
        return Err(invalid(format!("label {big} exceeds dimension {d}")));
    }
    RepresentativeWalk::new(d, f.n(), f.r(), a, b)
}

/// First positive rank (0-based) at which the walk cannot be recovered from
/// its crossing pairing, or None when every rank passes.
///
/// Rank ū with label α > 1 passes when some earlier-or-equal rank carries
/// α−1 (say the l-th seen so far, while ū is the k-th carrying α) and,
/// whenever the l-th-to-last α−1 among the negative labels exists, the
/// k-th-to-last α also exists and comes strictly later.
pub fn recovery_violation(w: &RepresentativeWalk) -> Option<usize> {
    let mut occ_b: Vec<Vec<usize>> = vec![Vec::new(); w.d + 1];
    for (i, &x) in w.b.iter().enumerate() {
        occ_b[x].push(i);
    }
    let mut seen = vec![0usize; w.d + 1];
    for (ui, &val) in w.a.iter().enumerate() {
        seen[val] += 1;
        if val == 1 {
            continue;
        }
        let k = seen[val];
        let l = seen[val - 1];
        if l == 0 {
            return Some(ui);
        }
        let low = &occ_b[val - 1];
        if low.len() < l {
            continue;
        }
        let high = &occ_b[val];
        if high.len() < k || low[low.len() - l] >= high[high.len() - k] {
            return Some(ui);
        }
    }
    None
}

/// Swaps the roles of α and α−1 inside one block, restricted to the ranks
/// selected by `in_region`; the relabeled run stays non-increasing.
fn swap_adjacent_labels(
    labels: &mut [usize],
    block: std::ops::Range<usize>,
    alpha: usize,
    in_region: impl Fn(usize) -> bool,
) {
    let ranks: Vec<usize> = block
        .filter(|&p| in_region(p) && (labels[p] == alpha || labels[p] == alpha - 1))
        .collect();
    let low = ranks.iter().filter(|&&p| labels[p] == alpha - 1).count();
    for (t, &p) in ranks.iter().enumerate() {
        labels[p] = if t < low { alpha } else { alpha - 1 };
    }
}

/// Sign-reversing involution on recovery violators among block-ordered walks
/// with Toeplitz endpoints. Keeps the positive labels up to the violating
/// rank and the negative labels from its mirror onward; in the changed
/// region the multiplicities of α and α−1 trade places block by block, so
/// the endpoint moves from T(π) to T(π∘(α−1 α)).
pub fn sign_reversing_involution(w: &RepresentativeWalk) -> Result<RepresentativeWalk> {
    if !w.is_block_ordered(BlockOrder::Nonincreasing) {
        return Err(invalid("walk must have non-increasing blocks"));
    }
    if ToeplitzPoint::at(&w.endpoint()).is_none() {
        return Err(invalid("walk must end at a Toeplitz point"));
    }
    let ui = recovery_violation(w).ok_or(Error::NothingToToggle)?;
    let m = w.a.len();
    let alpha = w.a[ui];
    let l = w.a[..=ui].iter().filter(|&&x| x == alpha - 1).count();
    let vbar = if l == 0 {
        m
    } else {
        let occ: Vec<usize> = (0..m).filter(|&i| w.b[i] == alpha - 1).collect();
        debug_assert!(occ.len() >= l, "a violating rank with l > 0 has the occurrence");
        occ[occ.len() - l]
    };
    let mut a = w.a.clone();
    let mut b = w.b.clone();
    for i in 0..w.n {
        let block = i * w.r..(i + 1) * w.r;
        swap_adjacent_labels(&mut a, block.clone(), alpha, |p| p > ui);
        swap_adjacent_labels(&mut b, block, alpha, |p| p < vbar);
    }
    RepresentativeWalk::new(w.d, w.n, w.r, a, b)
}

/// Endpoint restriction for walk enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndpointFilter {
    Any,
    Point(Vec<i64>),
    Toeplitz,
}

impl EndpointFilter {
    fn admits(&self, p: &[i64]) -> bool {
        match self {
            EndpointFilter::Any => true,
            EndpointFilter::Point(q) => p == q.as_slice(),
            EndpointFilter::Toeplitz => ToeplitzPoint::at(p).is_some(),
        }
    }
}

/// All block-ordered representative walks passing the endpoint filter, in
/// lex order of (a, b). The budget is charged per candidate examined, so an
/// exhausted budget surfaces as one final Err.
pub fn enumerate_representative_walks<'a>(
    d: usize,
    n: usize,
    r: usize,
    filter: EndpointFilter,
    order: BlockOrder,
    budget: &'a Budget,
) -> impl Iterator<Item = Result<RepresentativeWalk>> + 'a {
    let blocks = block_tuples(d, r, order);
    let mut idx = vec![0usize; 2 * n];
    let mut started = false;
    let mut done = n > 0 && blocks.is_empty();
    std::iter::from_fn(move || {
        loop {
            if done {
                return None;
            }
            if started {
                // odometer over block indices, last position fastest
                let mut pos = 2 * n;
                loop {
                    if pos == 0 {
                        done = true;
                        return None;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < blocks.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
            started = true;
            if budget.charge().is_err() {
                done = true;
                return Some(Err(Error::BudgetExceeded { budget: budget.cap() }));
            }
            let gather = |ids: &[usize]| -> Vec<usize> {
                ids.iter().flat_map(|&i| blocks[i].iter().copied()).collect()
            };
            let w = RepresentativeWalk {
                d,
                n,
                r,
                a: gather(&idx[..n]),
                b: gather(&idx[n..]),
            };
            if filter.admits(&w.endpoint()) {
                return Some(Ok(w));
            }
        }
    })
}

/// Closed walks whose positive half has non-increasing blocks, whose
/// negative half is traversed in reverse (blocks become non-decreasing), and
/// whose every prefix stays in the chamber x_1 ≥ x_2 ≥ ... ≥ x_d.
pub fn count_chamber_walks(d: usize, n: usize, r: usize, budget: &Budget) -> Result<BigInt> {
    if d == 0 {
        return if n * r == 0 { Ok(BigInt::one()) } else { Err(invalid("dimension must be at least 1")) };
    }
    let mut walker = ChamberWalker { d, n, r, budget, pos: vec![0i64; d] };
    if n * r == 0 {
        return Ok(BigInt::one());
    }
    walker.ascend(0, 0, d)
}

struct ChamberWalker<'a> {
    d: usize,
    n: usize,
    r: usize,
    budget: &'a Budget,
    pos: Vec<i64>,
}

impl ChamberWalker<'_> {
    /// cap: largest label allowed at this slot (blocks non-increasing).
    fn ascend(&mut self, block: usize, slot: usize, cap: usize) -> Result<BigInt> {
        self.budget.charge()?;
        if block == self.n {
            return self.descend(0, 0, 1);
        }
        let mut total = BigInt::zero();
        for v in 1..=cap {
            if v >= 2 && self.pos[v - 2] <= self.pos[v - 1] {
                continue;
            }
            self.pos[v - 1] += 1;
            total += if slot + 1 == self.r {
                self.ascend(block + 1, 0, self.d)
            } else {
                self.ascend(block, slot + 1, v)
            }?;
            self.pos[v - 1] -= 1;
        }
        Ok(total)
    }

    /// floor: smallest label allowed (reversed blocks non-decreasing).
    fn descend(&mut self, block: usize, slot: usize, floor: usize) -> Result<BigInt> {
        self.budget.charge()?;
        if block == self.n {
            debug_assert!(self.pos.iter().all(|&x| x == 0), "step balance forces the origin");
            return Ok(BigInt::one());
        }
        let mut total = BigInt::zero();
        for v in floor..=self.d {
            if self.pos[v - 1] == 0 {
                continue;
            }
            if v < self.d && self.pos[v - 1] - 1 < self.pos[v] {
                continue;
            }
            self.pos[v - 1] -= 1;
            total += if slot + 1 == self.r {
                self.descend(block + 1, 0, 1)
            } else {
                self.descend(block, slot + 1, v)
            }?;
            self.pos[v - 1] += 1;
        }
        Ok(total)
    }
}
