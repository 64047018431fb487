//! Exact truncated power series over the rationals.
//!
//! Everything here is finite and exact: series are maps from exponent
//! vectors to `BigRational` coefficients, truncated by degree in a single
//! designated variable (always index 0, called x below). Two variables may
//! carry half-integer exponents; their entries are stored doubled so the
//! representation stays integral.
//!
//! On top of the ring live the counting identities used as the analytic
//! cross-check route: Bessel determinants whose x^{2m} coefficient times
//! (m!)² counts permutations with bounded increasing subsequences, closed
//! forms for two-dimensional block-walk counts, and the operator pipeline
//! producing the generating function of 2-regular planar matchings.

use crate::error::{invalid, Error, Result};
use crate::exec;
use crate::multigraph::{factorial, next_permutation};
use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Variable of a series; `half` marks half-integer granularity, in which
/// case stored exponents are twice the real ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub half: bool,
}

impl Variable {
    pub fn integral(name: &str) -> Self {
        Variable { name: name.to_string(), half: false }
    }

    pub fn half_integral(name: &str) -> Self {
        Variable { name: name.to_string(), half: true }
    }
}

/// Multivariate series with exact rational coefficients, truncated at
/// degree `xmax` in variable 0. Exponents may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawSeries", try_from = "RawSeries")]
pub struct TruncatedSeries {
    vars: Vec<Variable>,
    xmax: i64,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    vars: Vec<Variable>,
    xmax: i64,
    terms: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exp: Vec<i32>,
    num: String,
    den: String,
}

impl From<TruncatedSeries> for RawSeries {
    fn from(s: TruncatedSeries) -> Self {
        let terms = s
            .terms
            .into_iter()
            .map(|(exp, c)| RawTerm { exp, num: c.numer().to_string(), den: c.denom().to_string() })
            .collect();
        RawSeries { vars: s.vars, xmax: s.xmax, terms }
    }
}

impl TryFrom<RawSeries> for TruncatedSeries {
    type Error = Error;
    fn try_from(raw: RawSeries) -> Result<Self> {
        let mut s = TruncatedSeries::zero(raw.vars, raw.xmax)?;
        for t in raw.terms {
            let num: BigInt = t.num.parse().map_err(|_| invalid(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| invalid(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(invalid("zero denominator"));
            }
            if t.exp.len() != s.vars.len() {
                return Err(invalid("exponent vector length differs from variable count"));
            }
            s.add_term(t.exp, BigRational::new(num, den));
        }
        Ok(s)
    }
}

impl TruncatedSeries {
    pub fn zero(vars: Vec<Variable>, xmax: i64) -> Result<Self> {
        if vars.is_empty() {
            return Err(invalid("a series needs at least the truncation variable"));
        }
        if vars[0].half {
            return Err(invalid("the truncation variable must be integral"));
        }
        for i in 1..vars.len() {
            if vars[..i].iter().any(|v| v.name == vars[i].name) {
                return Err(invalid(format!("duplicate variable {:?}", vars[i].name)));
            }
        }
        Ok(TruncatedSeries { vars, xmax, terms: BTreeMap::new() })
    }

    pub fn constant(vars: Vec<Variable>, xmax: i64, c: BigRational) -> Result<Self> {
        let mut s = TruncatedSeries::zero(vars, xmax)?;
        let exp = vec![0; s.vars.len()];
        s.add_term(exp, c);
        Ok(s)
    }

    /// Single term; exponents in storage units (half variables doubled).
    pub fn monomial(vars: Vec<Variable>, xmax: i64, exp: Vec<i32>, c: BigRational) -> Result<Self> {
        let mut s = TruncatedSeries::zero(vars, xmax)?;
        if exp.len() != s.vars.len() {
            return Err(invalid("exponent vector length differs from variable count"));
        }
        s.add_term(exp, c);
        Ok(s)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn xmax(&self) -> i64 {
        self.xmax
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at an exponent vector in storage units.
    pub fn coefficient(&self, exp: &[i32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exp: Vec<i32>, c: BigRational) {
        if c.is_zero() || exp[0] as i64 > self.xmax {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.xmax != other.xmax {
            return Err(invalid("series have different variable tables"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for (e, c) in &other.terms {
            s.add_term(e.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for (e, c) in &other.terms {
            s.add_term(e.clone(), -c.clone());
        }
        Ok(s)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut s = TruncatedSeries::zero(self.vars.clone(), self.xmax)?;
        for (e1, c1) in &self.terms {
            if e1[0] as i64 > self.xmax {
                continue;
            }
            for (e2, c2) in &other.terms {
                let exp: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                s.add_term(exp, c1 * c2);
            }
        }
        Ok(s)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut s = TruncatedSeries { vars: self.vars.clone(), xmax: self.xmax, terms: BTreeMap::new() };
        for (e, c0) in &self.terms {
            s.add_term(e.clone(), c0 * c);
        }
        s
    }

    /// Real exponent of a stored entry, as a rational.
    fn real_exponent(&self, var: usize, stored: i32) -> BigRational {
        if self.vars[var].half {
            BigRational::new(BigInt::from(stored), BigInt::from(2))
        } else {
            BigRational::from(BigInt::from(stored))
        }
    }

    /// Partial derivative: c v^a ↦ c a v^{a−1}, with rational a allowed.
    pub fn diff(&self, var: usize) -> Self {
        let unit = if self.vars[var].half { 2 } else { 1 };
        let mut s = TruncatedSeries { vars: self.vars.clone(), xmax: self.xmax, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let a = self.real_exponent(var, e[var]);
            if a.is_zero() {
                continue;
            }
            let mut exp = e.clone();
            exp[var] -= unit;
            s.add_term(exp, c * a);
        }
        s
    }

    /// Antiderivative: c v^a ↦ c v^{a+1}/(a+1). Exponent −1 has no
    /// antiderivative in the ring.
    pub fn antidiff(&self, var: usize) -> Result<Self> {
        let unit = if self.vars[var].half { 2 } else { 1 };
        let mut s = TruncatedSeries { vars: self.vars.clone(), xmax: self.xmax, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let a1 = self.real_exponent(var, e[var]) + BigRational::one();
            if a1.is_zero() {
                return Err(Error::AntidiffPole { var: self.vars[var].name.clone() });
            }
            let mut exp = e.clone();
            exp[var] += unit;
            s.add_term(exp, c / a1);
        }
        Ok(s)
    }

    /// Substitutes y = z², eliminating y. The target must be integral; the
    /// transferred exponent is always integral by the storage convention.
    pub fn subst_square(&self, y: usize, z: usize) -> Result<Self> {
        if y == z {
            return Err(invalid("substitution variables must differ"));
        }
        if self.vars[z].half {
            return Err(invalid("substitution target must be integral"));
        }
        let mut s = TruncatedSeries { vars: self.vars.clone(), xmax: self.xmax, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            let transferred = if self.vars[y].half { e[y] } else { 2 * e[y] };
            exp[y] = 0;
            exp[z] += transferred;
            s.add_term(exp, c.clone());
        }
        Ok(s)
    }

    /// Evaluates one variable at 1 by collapsing its exponent.
    pub fn eval_one(&self, var: usize) -> Self {
        let mut s = TruncatedSeries { vars: self.vars.clone(), xmax: self.xmax, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp[var] = 0;
            s.add_term(exp, c.clone());
        }
        s
    }

    /// Coefficients by x-degree; fails if any other variable survives.
    pub fn x_coefficients(&self) -> Result<BTreeMap<i64, BigRational>> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[1..].iter().any(|&x| x != 0) {
                return Err(invalid("series still involves auxiliary variables"));
            }
            out.insert(e[0] as i64, c.clone());
        }
        Ok(out)
    }

    /// Projects a series whose terms are pure x powers down to one variable.
    fn univariate_in_x(&self) -> Result<Self> {
        let mut s = TruncatedSeries::zero(vec![self.vars[0].clone()], self.xmax)?;
        for (e, c) in self.x_coefficients()? {
            s.add_term(vec![e as i32], c);
        }
        Ok(s)
    }
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Modified Bessel series I_ν(2x) = Σ_m x^{2m+ν} / (m!(m+ν)!).
///
/// ```
/// use planar_count::series::bessel_series;
/// let i0 = bessel_series(0, 6);
/// assert_eq!(i0.x_coefficients().unwrap()[&4].to_string(), "1/4");
/// ```
pub fn bessel_series(nu: usize, xmax: i64) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(vec![Variable::integral("x")], xmax).expect("one integral variable");
    let mut m = 0usize;
    loop {
        let e = (2 * m + nu) as i64;
        if e > xmax {
            return s;
        }
        s.add_term(vec![e as i32], ratio(BigInt::one(), factorial(m) * factorial(m + nu)));
        m += 1;
    }
}

/// det(I_{|i−j|}(2x)) over a d×d grid; the x^{2m} coefficient times (m!)²
/// counts permutations of m with no increasing subsequence longer than d.
pub fn gessel_determinant(d: usize, xmax: i64) -> TruncatedSeries {
    let zero = TruncatedSeries::zero(vec![Variable::integral("x")], xmax).expect("one integral variable");
    if d == 0 {
        return TruncatedSeries::constant(vec![Variable::integral("x")], xmax, BigRational::one()).expect("constant 1");
    }
    let mut perms: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut perm: Vec<usize> = (1..=d).collect();
    loop {
        let mut negative = false;
        for i in 0..d {
            for j in i + 1..d {
                if perm[i] > perm[j] {
                    negative = !negative;
                }
            }
        }
        perms.push((perm.clone(), negative));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let products = exec::map_collect(perms, |(perm, negative)| {
        let mut prod =
            TruncatedSeries::constant(vec![Variable::integral("x")], xmax, BigRational::one()).expect("constant 1");
        for (i, &pi) in perm.iter().enumerate() {
            let nu = (i + 1).abs_diff(pi);
            prod = prod.mul(&bessel_series(nu, xmax)).expect("same variable table");
        }
        if negative {
            prod.scale(&-BigRational::one())
        } else {
            prod
        }
    });
    products.into_iter().fold(zero, |acc, p| acc.add(&p).expect("same variable table"))
}

/// The d=2 Bessel determinant written with antiderivative off-diagonal
/// entries x·∂⁻¹_a I₀(2x√(ab)) and x·∂⁻¹_b, evaluated at a = b = 1.
/// Must agree with [`gessel_determinant`] at d = 2.
pub fn gessel_determinant_antiderivative_form(xmax: i64) -> TruncatedSeries {
    let vars = vec![Variable::integral("x"), Variable::integral("a"), Variable::integral("b")];
    let (a, b) = (1usize, 2usize);
    let mut i0 = TruncatedSeries::zero(vars.clone(), xmax).expect("integral variables");
    let mut s = 0usize;
    while 2 * s as i64 <= xmax {
        let f = factorial(s);
        i0.add_term(vec![2 * s as i32, s as i32, s as i32], ratio(BigInt::one(), &f * &f));
        s += 1;
    }
    let x = TruncatedSeries::monomial(vars, xmax, vec![1, 0, 0], BigRational::one()).expect("monomial x");
    let upper = x.mul(&i0.antidiff(a).expect("no pole")).expect("same variable table");
    let lower = x.mul(&i0.antidiff(b).expect("no pole")).expect("same variable table");
    let det = i0
        .mul(&i0)
        .and_then(|sq| sq.sub(&upper.mul(&lower)?))
        .expect("same variable table");
    det.eval_one(a).eval_one(b).univariate_in_x().expect("a and b evaluated away")
}

/// Falling factorial (a)_b = a(a−1)⋯(a−b+1); zero once b exceeds a.
pub fn falling_factorial(a: u64, b: u64) -> BigInt {
    let mut v = BigInt::one();
    for i in 0..b {
        if i >= a {
            return BigInt::zero();
        }
        v *= BigInt::from(a - i);
    }
    v
}

/// One-dimensional walks with fixed step counts reach p in at most one way.
pub fn unit_walk_count(m_pos: usize, m_neg: usize, p: i64) -> BigInt {
    if m_pos as i64 - m_neg as i64 == p {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Interleavings of the unit walk: C(m⁺+m⁻, m⁺) when it exists.
pub fn interleaved_unit_walk_count(m_pos: usize, m_neg: usize, p: i64) -> BigInt {
    binomial(m_pos + m_neg, m_pos) * unit_walk_count(m_pos, m_neg, p)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Whether a two-dimensional walk count is taken over representative walks
/// (positive steps first) or over all interleavings of the step signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkFlavor {
    Representative,
    Interleaved,
}

/// Closed form for the two-dimensional block-walk count with m⁺ positive and
/// m⁻ negative steps in non-increasing pairs, ending at p, divided by
/// m⁺!m⁻!. The interleaved flavor multiplies by C(m⁺+m⁻, m⁺).
///
/// The value is an inclusion–exclusion over (k, l): walks whose first k
/// positive pairs and last l negative pairs are forced to be the mixed pair
/// split off a product of two one-dimensional counts.
pub fn paired_walk_ratio(p: (i64, i64), m_pos: usize, m_neg: usize, flavor: WalkFlavor) -> Result<BigRational> {
    if !m_pos.is_multiple_of(2) || !m_neg.is_multiple_of(2) {
        return Err(invalid("step counts must be even (walks are made of pairs)"));
    }
    let mut total = BigRational::zero();
    for k in 0..=m_pos / 2 {
        for l in 0..=m_neg / 2 {
            let mut pref = ratio(
                falling_factorial((m_pos / 2) as u64, k as u64) * falling_factorial((m_neg / 2) as u64, l as u64),
                factorial(k) * factorial(l),
            );
            if (k + l) % 2 == 1 {
                pref = -pref;
            }
            let den = falling_factorial(m_pos as u64, 2 * k as u64) * falling_factorial(m_neg as u64, 2 * l as u64);
            debug_assert!(!den.is_zero(), "2k <= m+ and 2l <= m-");
            pref /= BigRational::from(den);
            let mut inner = BigRational::zero();
            for m1p in k..=m_pos - k {
                let m2p = m_pos - m1p;
                for m1m in l..=m_neg - l {
                    let m2m = m_neg - m1m;
                    let w = unit_walk_count(m1p, m1m, p.0) * unit_walk_count(m2p, m2m, p.1);
                    if w.is_zero() {
                        continue;
                    }
                    inner += ratio(w, factorial(m1p - k) * factorial(m1m - l) * factorial(m2p - k) * factorial(m2m - l));
                }
            }
            total += pref * inner;
        }
    }
    if flavor == WalkFlavor::Interleaved {
        total *= BigRational::from(binomial(m_pos + m_neg, m_pos));
    }
    Ok(total)
}

const XI: usize = 0;
const YP: usize = 1;
const YM: usize = 2;
const ZP: usize = 3;
const ZM: usize = 4;
const A1: usize = 5;
const B1: usize = 6;
const A2: usize = 7;
const B2: usize = 8;

fn operator_vars() -> Vec<Variable> {
    vec![
        Variable::integral("x"),
        Variable::half_integral("y+"),
        Variable::half_integral("y-"),
        Variable::integral("z+"),
        Variable::integral("z-"),
        Variable::integral("a1"),
        Variable::integral("b1"),
        Variable::integral("a2"),
        Variable::integral("b2"),
    ]
}

/// Σ_s (y₊^{1/2} x a)^{s+offset} (y₋^{1/2} x b)^s / ((s+offset)! s!),
/// the Bessel-type kernel feeding the operator determinant.
fn bessel_kernel(offset: i64, a: usize, b: usize, xmax: i64) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(operator_vars(), xmax).expect("fixed variable table");
    for sp in 0..=xmax {
        let sm = sp - offset;
        if sm < 0 || sp + sm > xmax {
            continue;
        }
        let mut exp = vec![0i32; 9];
        exp[XI] = (sp + sm) as i32;
        exp[YP] = sp as i32; // stored doubled: real exponent sp/2
        exp[YM] = sm as i32;
        exp[a] = sp as i32;
        exp[b] = sm as i32;
        s.add_term(exp, ratio(BigInt::one(), factorial(sp as usize) * factorial(sm as usize)));
    }
    s
}

/// Generating function whose x^{4n} coefficient is the number of 2-regular
/// multigraphs on n+n vertices with planar matching number at most 2,
/// divided by (2n)!².
///
/// Built as a 2×2 determinant of Bessel kernels hit by a finite
/// inclusion–exclusion operator: for each (k, l), differentiate k times in
/// a1 and a2 and l times in b1 and b2, evaluate a = b = 1, differentiate k
/// times in y₊ and l times in y₋, substitute y± = z±², antidifferentiate 2k
/// and 2l times in z±, evaluate z± = 1, and weight by (−1)^{k+l}/k!l!.
///
/// The two coordinate tallies are split over separate variables with
/// half-weight each, so odd splits leave nonzero coefficients at exponents
/// ≡ 2 (mod 4); the raw output is returned without suppressing them.
pub fn two_regular_matching_gf(xmax: i64) -> TruncatedSeries {
    let det = {
        let d00 = bessel_kernel(0, A1, B1, xmax);
        let d11 = bessel_kernel(0, A2, B2, xmax);
        let d01 = bessel_kernel(-1, A1, B1, xmax);
        let d10 = bessel_kernel(1, A2, B2, xmax);
        d00.mul(&d11).and_then(|p| p.sub(&d01.mul(&d10)?)).expect("same variable table")
    };
    let cap = (xmax / 2).max(0);
    let pairs: Vec<(i64, i64)> = (0..=cap).flat_map(|k| (0..=cap).map(move |l| (k, l))).collect();
    let zero = TruncatedSeries::zero(operator_vars(), xmax).expect("fixed variable table");
    let parts = exec::map_collect(pairs, |(k, l)| {
        let mut f = det.clone();
        for _ in 0..k {
            f = f.diff(A1).diff(A2);
        }
        for _ in 0..l {
            f = f.diff(B1).diff(B2);
        }
        for v in [A1, B1, A2, B2] {
            f = f.eval_one(v);
        }
        for _ in 0..k {
            f = f.diff(YP);
        }
        for _ in 0..l {
            f = f.diff(YM);
        }
        f = f.subst_square(YP, ZP).expect("z+ is integral");
        f = f.subst_square(YM, ZM).expect("z- is integral");
        for _ in 0..2 * k {
            f = f.antidiff(ZP).expect("exponents stay nonnegative");
        }
        for _ in 0..2 * l {
            f = f.antidiff(ZM).expect("exponents stay nonnegative");
        }
        f = f.eval_one(ZP).eval_one(ZM);
        let mut w = ratio(BigInt::one(), factorial(k as usize) * factorial(l as usize));
        if (k + l) % 2 == 1 {
            w = -w;
        }
        f.scale(&w)
    });
    let total = parts.into_iter().fold(zero, |acc, p| acc.add(&p).expect("same variable table"));
    total.univariate_in_x().expect("all auxiliary variables evaluated")
}
