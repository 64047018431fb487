//! Brute-force ground truth and the cross-method verification battery.
//!
//! The oracles here deliberately share no code with the rest of the crate:
//! multigraphs are enumerated by naive backtracking over matrix entries,
//! permutations by recursion, and planar sizes by an O(E²) pairwise
//! longest-chain search. Agreement between these and the walk, tableau,
//! chamber, and series routes is the whole correctness argument.

use crate::budget::Budget;
use crate::error::Result;
use crate::multigraph::{enumerate_multigraphs, factorial};
use crate::series::{
    gessel_determinant, gessel_determinant_antiderivative_form, paired_walk_ratio, two_regular_matching_gf,
    WalkFlavor,
};
use crate::tableaux::{inverse_rsk, rsk_configuration, BlockCondition};
use crate::walks::{
    count_chamber_walks, count_restricted_walks_uneven, enumerate_representative_walks, profile_walk,
    quasi_configuration, recovery_violation, sign_reversing_involution, signed_interleaved_sum, signed_toeplitz_sum,
    BlockOrder, EndpointFilter, ToeplitzPoint,
};
use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

/// Longest chain among the listed edges, strict or weak in both coordinates.
fn longest_chain(edges: &[(usize, usize)], strict: bool) -> usize {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let mut dp = vec![0usize; sorted.len()];
    let mut best = 0;
    for i in 0..sorted.len() {
        let (u, v) = sorted[i];
        let mut b = 1;
        for j in 0..i {
            let (uj, vj) = sorted[j];
            let ok = if strict { uj < u && vj < v } else { vj <= v };
            if ok {
                b = b.max(dp[j] + 1);
            }
        }
        dp[i] = b;
        best = best.max(b);
    }
    best
}

/// Permutations of length m whose longest increasing subsequence is at
/// most d, counted one by one.
pub fn brute_u(m: usize, d: usize, budget: &Budget) -> Result<BigInt> {
    fn rec(
        m: usize,
        d: usize,
        used: &mut [bool],
        perm: &mut Vec<usize>,
        budget: &Budget,
        count: &mut BigInt,
    ) -> Result<()> {
        if perm.len() == m {
            budget.charge()?;
            let edges: Vec<(usize, usize)> = perm.iter().copied().enumerate().collect();
            if longest_chain(&edges, true) <= d {
                *count += 1;
            }
            return Ok(());
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                rec(m, d, used, perm, budget, count)?;
                perm.pop();
                used[v] = false;
            }
        }
        Ok(())
    }
    let mut count = BigInt::zero();
    rec(m, d, &mut vec![false; m], &mut Vec::new(), budget, &mut count)?;
    Ok(count)
}

type EdgeVisitor<'a> = dyn FnMut(&[(usize, usize)]) -> Result<()> + 'a;

/// Walks every n×n nonnegative matrix with all margins r and hands the edge
/// list to `visit`.
fn for_each_margin_matrix(n: usize, r: usize, budget: &Budget, visit: &mut EdgeVisitor) -> Result<()> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        r: usize,
        row: usize,
        col: usize,
        row_rem: usize,
        col_rem: &mut [usize],
        edges: &mut Vec<(usize, usize)>,
        budget: &Budget,
        visit: &mut EdgeVisitor,
    ) -> Result<()> {
        if row == n {
            budget.charge()?;
            return visit(edges);
        }
        if col == n {
            if row_rem == 0 {
                return rec(n, r, row + 1, 0, r, col_rem, edges, budget, visit);
            }
            return Ok(());
        }
        let later: usize = col_rem[col + 1..].iter().sum();
        let lo = row_rem.saturating_sub(later);
        for e in lo..=row_rem.min(col_rem[col]) {
            col_rem[col] -= e;
            for _ in 0..e {
                edges.push((row, col));
            }
            rec(n, r, row, col + 1, row_rem - e, col_rem, edges, budget, visit)?;
            for _ in 0..e {
                edges.pop();
            }
            col_rem[col] += e;
        }
        Ok(())
    }
    rec(n, r, 0, 0, r, &mut vec![r; n], &mut Vec::new(), budget, visit)
}

/// r-regular multigraphs on n+n vertices with planar matching number ≤ d.
pub fn brute_g(n: usize, r: usize, d: usize, budget: &Budget) -> Result<BigInt> {
    let mut count = BigInt::zero();
    for_each_margin_matrix(n, r, budget, &mut |edges| {
        if longest_chain(edges, true) <= d {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// r-regular multigraphs with planar subgraph number ≤ d.
pub fn brute_g_hat(n: usize, r: usize, d: usize, budget: &Budget) -> Result<BigInt> {
    let mut count = BigInt::zero();
    for_each_margin_matrix(n, r, budget, &mut |edges| {
        if longest_chain(edges, false) <= d {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// Bounds for [`verify_all`]; the defaults finish in seconds.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_rn: usize,
    pub max_d: usize,
    pub x_bound: i64,
    /// Appends one deliberately wrong row, for exercising failure paths.
    pub corrupt: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_rn: 6, max_d: 4, x_bound: 8, corrupt: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodValue {
    pub method: String,
    pub value: String,
}

/// One verified claim: all method values must equal the expected value.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub claim: String,
    pub params: String,
    pub expected: String,
    pub values: Vec<MethodValue>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    fn push(&mut self, claim: &str, params: String, expected: String, values: Vec<(String, String)>) {
        let pass = values.iter().all(|(_, v)| *v == expected);
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.rows.push(ReportRow {
            claim: claim.to_string(),
            params,
            expected,
            values: values.into_iter().map(|(method, value)| MethodValue { method, value }).collect(),
            pass,
        });
    }

    fn push_property(&mut self, claim: &str, params: String, holds: bool) {
        self.push(
            claim,
            params,
            "pass".to_string(),
            vec![("exhaustive".to_string(), if holds { "pass" } else { "fail" }.to_string())],
        );
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Long-format table; the expected value appears as method "oracle".
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("claim,params,method,value,pass\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},oracle,{},{}\n", row.claim, row.params, row.expected, row.pass));
            for mv in &row.values {
                out.push_str(&format!("{},{},{},{},{}\n", row.claim, row.params, mv.method, mv.value, row.pass));
            }
        }
        out
    }
}

/// Regular shapes (n, r) with 1 ≤ r and rn ≤ max_rn; n = 0 appears once.
fn shapes(max_rn: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(0usize, 1usize)];
    for r in 1..=max_rn.max(1) {
        for n in 1..=max_rn / r.max(1) {
            if n * r <= max_rn {
                out.push((n, r));
            }
        }
    }
    out
}

fn catalan(n: usize) -> BigInt {
    factorial(2 * n) / (factorial(n) * factorial(n + 1))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn coeffs_to_string(s: &crate::series::TruncatedSeries) -> String {
    let co = s.x_coefficients().expect("univariate series");
    let parts: Vec<String> = co.iter().map(|(e, c)| format!("{e}:{c}")).collect();
    parts.join(";")
}

/// Runs every cross-method equality and structural invariant within the
/// given bounds. Failures become failing rows, never errors; errors are
/// reserved for exhausted budgets.
pub fn verify_all(opts: &VerifyOptions, budget: &Budget) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();

    // counting routes against the brute-force oracle
    for &(n, r) in &shapes(opts.max_rn) {
        let rn = n * r;
        for d in 1..=rn.max(1).min(opts.max_d) {
            let g = brute_g(n, r, d, budget)?;
            let walks = match signed_toeplitz_sum(d, n, r, BlockOrder::Nonincreasing) {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let tableaux = crate::tableaux::count_tableau_pairs(n, r, d, BlockCondition::StrictDescent);
            report.push(
                "matching-count",
                format!("n={n} r={r} d={d}"),
                g.to_string(),
                vec![("walks".to_string(), walks), ("tableaux".to_string(), tableaux.to_string())],
            );

            let gh = brute_g_hat(n, r, d, budget)?;
            let walks = match signed_toeplitz_sum(d, n, r, BlockOrder::Increasing) {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let tableaux = crate::tableaux::count_tableau_pairs(n, r, d, BlockCondition::WeakAscent);
            report.push(
                "subgraph-count",
                format!("n={n} r={r} d={d}"),
                gh.to_string(),
                vec![("walks".to_string(), walks), ("tableaux".to_string(), tableaux.to_string())],
            );
        }

        // chamber reading, deliberately bounded tighter
        for d in 1..=rn.max(1).min(opts.max_d).min(3) {
            let g = brute_g(n, r, d, budget)?;
            let chamber = count_chamber_walks(d, n, r, budget)?;
            report.push(
                "chamber-count",
                format!("n={n} r={r} d={d}"),
                g.to_string(),
                vec![("chamber".to_string(), chamber.to_string())],
            );
        }

        // sum of configuration weights over all multigraphs
        let mut weight = BigInt::zero();
        for g in enumerate_multigraphs(n, r, budget) {
            weight += g?.configuration_count();
        }
        report.push(
            "configuration-weight",
            format!("n={n} r={r}"),
            factorial(rn).to_string(),
            vec![("expansion-sum".to_string(), weight.to_string())],
        );
    }

    // Catalan reduction at r = 1, d = 2
    for n in 0..=10usize {
        let mut values = vec![(
            "walks".to_string(),
            match signed_toeplitz_sum(2, n, 1, BlockOrder::Nonincreasing) {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            },
        )];
        if n <= opts.max_rn.min(8) {
            values.push(("brute".to_string(), brute_g(n, 1, 2, budget)?.to_string()));
        }
        report.push("catalan", format!("n={n}"), catalan(n).to_string(), values);
    }

    // Bessel determinant coefficients against permutation counts
    for d in 2..=4usize {
        let det = gessel_determinant(d, opts.x_bound);
        let mut m = 0usize;
        while 2 * m as i64 <= opts.x_bound {
            let u = brute_u(m, d, budget)?;
            let f = factorial(m);
            let got = det.coefficient(&[2 * m as i32]) * BigRational::from(&f * &f);
            report.push(
                "gessel-coefficient",
                format!("d={d} m={m}"),
                u.to_string(),
                vec![("series".to_string(), got.to_string())],
            );
            m += 1;
        }
    }

    report.push(
        "alt-determinant",
        format!("xmax={}", opts.x_bound),
        coeffs_to_string(&gessel_determinant(2, opts.x_bound)),
        vec![(
            "antiderivative-form".to_string(),
            coeffs_to_string(&gessel_determinant_antiderivative_form(opts.x_bound)),
        )],
    );

    // interleaved signed sums against C(2m,m) u_m(d)
    for d in 1..=3usize {
        for m in 0..=opts.max_rn.min(6) {
            let expected = binomial(2 * m, m) * brute_u(m, d, budget)?;
            let got = match signed_interleaved_sum(d, m) {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            };
            report.push(
                "interleaved-sum",
                format!("d={d} m={m}"),
                expected.to_string(),
                vec![("walks".to_string(), got)],
            );
        }
    }

    // operator pipeline coefficients at x^{4n}
    let gf = two_regular_matching_gf(opts.x_bound);
    let mut n = 0usize;
    while 4 * n as i64 <= opts.x_bound {
        let g = brute_g(n, 2, 2, budget)?;
        let f = factorial(2 * n);
        let expected = BigRational::new(g, &f * &f);
        let got = gf.coefficient(&[4 * n as i32]);
        report.push(
            "operator-gf",
            format!("n={n}"),
            expected.to_string(),
            vec![("series".to_string(), got.to_string())],
        );
        n += 1;
    }

    // closed-form walk ratios against direct block-walk counts
    for p in [(0i64, 0i64), (-1, 1)] {
        for m_pos in (0..=opts.max_rn.min(8)).step_by(2) {
            for m_neg in (0..=opts.max_rn.min(8)).step_by(2) {
                let walks = count_restricted_walks_uneven(
                    2,
                    m_pos / 2,
                    m_neg / 2,
                    2,
                    &[p.0, p.1],
                    BlockOrder::Nonincreasing,
                )?;
                let denom = factorial(m_pos) * factorial(m_neg);
                for (flavor, label, scale) in [
                    (WalkFlavor::Representative, "representative", BigInt::one()),
                    (WalkFlavor::Interleaved, "interleaved", binomial(m_pos + m_neg, m_pos)),
                ] {
                    let expected = BigRational::new(&walks * scale, denom.clone());
                    let got = paired_walk_ratio(p, m_pos, m_neg, flavor)?;
                    report.push(
                        "walk-ratio",
                        format!("p=({};{}) m+={m_pos} m-={m_neg} {label}", p.0, p.1),
                        expected.to_string(),
                        vec![("closed-form".to_string(), got.to_string())],
                    );
                }
            }
        }
    }

    // crossing pairing recovers the configuration behind its profile walk
    for &(n, r) in &shapes(opts.max_rn.min(5)) {
        let mut holds = true;
        for c in crate::multigraph::enumerate_configurations(n, r, budget) {
            let c = c?;
            if quasi_configuration(&profile_walk(&c)).to_configuration().as_ref() != Some(&c) {
                holds = false;
            }
        }
        report.push_property("pairing-roundtrip", format!("n={n} r={r}"), holds);
    }

    // profile image = recoverable Toeplitz walks
    for &(n, r) in &shapes(opts.max_rn.min(4)) {
        for d in 1..=(n * r).min(3).min(opts.max_d) {
            let mut image = std::collections::HashSet::new();
            for g in enumerate_multigraphs(n, r, budget) {
                let g = g?;
                if g.planar_matching_number() <= d {
                    image.insert(profile_walk_in(&g.expand(), d));
                }
            }
            let mut walks = std::collections::HashSet::new();
            for w in enumerate_representative_walks(d, n, r, EndpointFilter::Toeplitz, BlockOrder::Nonincreasing, budget)
            {
                let w = w?;
                if recovery_violation(&w).is_none() {
                    walks.insert(w);
                }
            }
            report.push_property("image-characterization", format!("n={n} r={r} d={d}"), image == walks);
        }
    }

    // sign-reversing involution on recovery violators
    for &(n, r) in &shapes(opts.max_rn.min(4)) {
        let mut holds = true;
        let mut signed = 0i64;
        for w in enumerate_representative_walks(2, n, r, EndpointFilter::Toeplitz, BlockOrder::Nonincreasing, budget) {
            let w = w?;
            let Some(rank) = recovery_violation(&w) else { continue };
            let here = ToeplitzPoint::at(&w.endpoint()).expect("filtered to Toeplitz");
            signed += here.sign() as i64;
            match sign_reversing_involution(&w) {
                Ok(v) => {
                    let there = ToeplitzPoint::at(&v.endpoint());
                    holds &= v.is_block_ordered(BlockOrder::Nonincreasing)
                        && there.is_some_and(|t| t.sign() == -here.sign())
                        && recovery_violation(&v) == Some(rank)
                        && sign_reversing_involution(&v).ok().as_ref() == Some(&w);
                }
                Err(_) => holds = false,
            }
        }
        holds &= signed == 0;
        report.push_property("involution", format!("d=2 n={n} r={r}"), holds);
    }

    // RSK invariants over full symmetric groups
    for m in 0..=opts.max_rn.min(6) {
        let mut roundtrip = true;
        let mut symmetry = true;
        let mut columns = true;
        let mut bumping = true;
        for c in crate::multigraph::enumerate_configurations(m, 1, budget) {
            let c = c?;
            let pair = rsk_configuration(&c);
            let values: Vec<usize> = c.pairing().iter().map(|&v| v + 1).collect();
            roundtrip &= inverse_rsk(&pair).ok().as_deref() == Some(&values);
            let inv = rsk_configuration(&c.transpose());
            symmetry &= inv.p == pair.q && inv.q == pair.p;
            columns &= pair.p.column_count() == c.planar_matching_number();
            if m >= 2 {
                bumping &= bumping_boxes_consistent(&values);
            }
        }
        report.push_property("rsk-roundtrip", format!("m={m}"), roundtrip);
        report.push_property("rsk-symmetry", format!("m={m}"), symmetry);
        report.push_property("rsk-columns", format!("m={m}"), columns);
        if m >= 2 {
            report.push_property("rsk-bumping", format!("m={m}"), bumping);
        }
    }

    if opts.corrupt {
        report.push(
            "corrupt-fixture",
            "deliberate mismatch".to_string(),
            "1".to_string(),
            vec![("fixture".to_string(), "0".to_string())],
        );
    }

    Ok(report)
}

fn profile_walk_in(c: &crate::multigraph::Configuration, d: usize) -> crate::walks::RepresentativeWalk {
    crate::walks::profile_walk_in_dimension(c, d).expect("matching number bounded by d")
}

/// Insertion boxes of the last two values must relate as the values do:
/// ascents settle strictly right and weakly up, descents weakly left and
/// strictly down.
fn bumping_boxes_consistent(values: &[usize]) -> bool {
    let m = values.len();
    let mut t = crate::tableaux::YoungTableau::empty();
    for &v in &values[..m - 2] {
        t = t.row_insert(v).expect("fresh entries").0;
    }
    let (x, y) = (values[m - 2], values[m - 1]);
    let (t, b) = t.row_insert(x).expect("fresh entries");
    let (_, bp) = t.row_insert(y).expect("fresh entries");
    if x <= y {
        b.1 < bp.1 && b.0 >= bp.0
    } else {
        bp.1 <= b.1 && bp.0 > b.0
    }
}
