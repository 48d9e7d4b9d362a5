//! d-sequences, strong d-sequences and dd-sequences, together with the
//! closed forms for `chi_k(x(n); M)` that hold for dd-sequences and the
//! multilinear fitting used to read polynomial behaviour off a grid.
//!
//! Universal statements over exponent tuples are checked on the grid
//! `{1..n_max}^s`. A single exponent `n_j` entering a colon condition is
//! additionally closed exactly: both sides are ascending chains in `n_j` and
//! the check is extended up to the point where both chains have stabilized.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Submodule;
use crate::koszul::{KoszulComplex, multiplicity, powers};
use crate::module::{FPModule, Length, check_sequence, colon, length_between, present_image, saturate};
use crate::poly::Polynomial;

/// All tuples in `{lo..=hi}^d`, in lexicographic order.
pub fn grid(d: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    NotD,
    D,
    StrongD,
    Dd,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::NotD => "not-d",
            Level::D => "d",
            Level::StrongD => "strong-d",
            Level::Dd => "dd",
        })
    }
}

/// One colon condition `L : x_j^{n_j} = L : x_i^{n_i} x_j^{n_j}` where
/// `L = (x_1^{n_1}, ..., x_{i-1}^{n_{i-1}}, x_{p+1}^{n_{p+1}}, ..., x_s^{n_s}) M`
/// and `p` is the prefix length (`p = s` for the plain d-sequence test).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Condition {
    exps: Vec<u32>,
    prefix: usize,
    i: usize,
    j: usize,
}

impl Condition {
    /// Exponents that do not enter the condition are normalized to 1.
    fn new(n: &[u32], prefix: usize, i: usize, j: usize) -> Condition {
        let exps = n
            .iter()
            .enumerate()
            .map(|(q, &e)| if q < i || q == j - 1 || q >= prefix { e } else { 1 })
            .collect();
        Condition { exps, prefix, i, j }
    }

    fn base(&self, m: &FPModule, x: &[Polynomial]) -> Result<(Vec<Polynomial>, Submodule)> {
        let xn = powers(x, &self.exps)?;
        let gens: Vec<Polynomial> = xn[..self.i - 1].iter().chain(&xn[self.prefix..]).cloned().collect();
        let l = m.ideal_times(&gens);
        Ok((xn, l))
    }

    fn sides(&self, m: &FPModule, x: &[Polynomial]) -> Result<(Submodule, Submodule)> {
        let (xn, l) = self.base(m, x)?;
        let lhs = colon(&l, &xn[self.j - 1])?;
        let rhs = colon(&l, &xn[self.i - 1].mul(&xn[self.j - 1]))?;
        Ok((lhs, rhs))
    }

    fn check(&self, m: &FPModule, x: &[Polynomial]) -> Result<Option<ColonWitness>> {
        let (lhs, rhs) = self.sides(m, x)?;
        if lhs.equals(&rhs)? {
            return Ok(None);
        }
        Ok(Some(ColonWitness {
            prefix: self.prefix,
            i: self.i,
            j: self.j,
            exponents: self.exps.clone(),
            lhs,
            rhs,
        }))
    }

    /// Exponent of `x_j` beyond which both sides no longer change.
    fn stabilization(&self, m: &FPModule, x: &[Polynomial]) -> Result<u32> {
        let (xn, l) = self.base(m, x)?;
        let (_, a) = saturate(&l, &x[self.j - 1])?;
        let (_, b) = saturate(&colon(&l, &xn[self.i - 1])?, &x[self.j - 1])?;
        Ok(a.max(b))
    }
}

/// A colon condition that failed. Both sides are preimages in the free
/// cover of the module.
#[derive(Clone, Debug)]
pub struct ColonWitness {
    /// The d-sequence property was tested for the first `prefix` elements
    /// on `M / (x_{prefix+1}^{n}, ..., x_s^{n}) M`.
    pub prefix: usize,
    pub i: usize,
    pub j: usize,
    pub exponents: Vec<u32>,
    /// `L : x_j^{n_j}`.
    pub lhs: Submodule,
    /// `L : x_i^{n_i} x_j^{n_j}`.
    pub rhs: Submodule,
}

impl ColonWitness {
    /// Recomputes nothing; confirms the stored sides differ.
    pub fn reverify(&self) -> Result<bool> {
        Ok(!self.lhs.equals(&self.rhs)?)
    }

    /// Human-readable form of the failing equality.
    pub fn describe(&self, x: &[Polynomial]) -> String {
        let pw = |q: usize| {
            let e = self.exponents[q];
            let base = x[q].to_string();
            let base = if base.contains(' ') { format!("({base})") } else { base };
            if e == 1 { base } else { format!("{base}^{e}") }
        };
        let mut l: Vec<String> = (0..self.i - 1).map(pw).collect();
        l.extend((self.prefix..x.len()).map(pw));
        let l = if l.is_empty() { "0".to_string() } else { format!("({})M", l.join(", ")) };
        format!("{l} : {} != {l} : {}*{}", pw(self.j - 1), pw(self.i - 1), pw(self.j - 1))
    }
}

/// Outcome of the sequence-class checks.
#[derive(Clone, Debug)]
pub struct DdVerdict {
    pub level: Level,
    /// Grid bound used for joint quantifiers.
    pub n_max: u32,
    /// The first failing condition, for verdicts below the level asked for.
    pub witness: Option<ColonWitness>,
    pub certificate: Option<Certificate>,
    /// Every colon condition that was verified, in check order.
    pub record: Vec<ConditionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRecord {
    pub prefix: usize,
    pub i: usize,
    pub j: usize,
    pub exponents: Vec<u32>,
}

impl From<&Condition> for ConditionRecord {
    fn from(c: &Condition) -> ConditionRecord {
        ConditionRecord { prefix: c.prefix, i: c.i, j: c.j, exponents: c.exps.clone() }
    }
}

/// Checks all conditions; on failure the record stops at the first failing one.
fn first_failure(
    m: &FPModule,
    x: &[Polynomial],
    conds: BTreeSet<Condition>,
    record: &mut Vec<ConditionRecord>,
) -> Result<Option<ColonWitness>> {
    let conds: Vec<Condition> = conds.into_iter().collect();
    let results: Vec<Result<Option<ColonWitness>>> = conds.par_iter().map(|c| c.check(m, x)).collect();
    for (c, r) in conds.iter().zip(results) {
        record.push(c.into());
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn conditions(s: usize, prefix: usize, grid_pts: &[Vec<u32>]) -> BTreeSet<Condition> {
    let mut out = BTreeSet::new();
    for n in grid_pts {
        for i in 1..=prefix {
            for j in i..=prefix {
                out.insert(Condition::new(n, prefix, i, j));
            }
        }
    }
    debug_assert!(out.iter().all(|c| c.exps.len() == s));
    out
}

/// Adds the conditions needed to close the quantifier over `n_j` exactly.
fn close_single_exponent(m: &FPModule, x: &[Polynomial], conds: &mut BTreeSet<Condition>, n_max: u32) -> Result<()> {
    let mut seeds: Vec<Condition> = conds.iter().filter(|c| c.j > c.i && c.exps[c.j - 1] == 1).cloned().collect();
    seeds.sort();
    let bounds: Vec<Result<u32>> = seeds.par_iter().map(|c| c.stabilization(m, x)).collect();
    for (c, b) in seeds.iter().zip(bounds) {
        for e in n_max + 1..=b? {
            let mut exps = c.exps.clone();
            exps[c.j - 1] = e;
            conds.insert(Condition { exps, ..c.clone() });
        }
    }
    Ok(())
}

/// Checks the defining colon equalities of a d-sequence. Returns the first
/// failing one, or `None` when `x` is a d-sequence of `M`.
pub fn is_d_sequence(m: &FPModule, x: &[Polynomial]) -> Result<Option<ColonWitness>> {
    check_sequence(m.ring(), x)?;
    let s = x.len();
    let ones = vec![1; s];
    first_failure(m, x, conditions(s, s, &[ones]), &mut Vec::new())
}

fn strong_d_stage(m: &FPModule, x: &[Polynomial], n_max: u32) -> Result<DdVerdict> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    check_sequence(m.ring(), x)?;
    let s = x.len();
    let mut record = Vec::new();
    let base = conditions(s, s, &[vec![1; s]]);
    if let Some(w) = first_failure(m, x, base.clone(), &mut record)? {
        return Ok(DdVerdict { level: Level::NotD, n_max, witness: Some(w), certificate: None, record });
    }
    let mut conds = conditions(s, s, &grid(s, 1, n_max));
    close_single_exponent(m, x, &mut conds, n_max)?;
    let conds = conds.difference(&base).cloned().collect();
    let witness = first_failure(m, x, conds, &mut record)?;
    let level = if witness.is_some() { Level::D } else { Level::StrongD };
    Ok(DdVerdict { level, n_max, witness, certificate: None, record })
}

/// Strong d-sequence test: `x(n)` is a d-sequence for all `n` in
/// `{1..n_max}^s`, with each single exponent `n_j` closed exactly.
pub fn is_strong_d(m: &FPModule, x: &[Polynomial], n_max: u32) -> Result<DdVerdict> {
    strong_d_stage(m, x, n_max)
}

/// dd-sequence test: for every prefix length `i` and every `n` on the grid,
/// `x_1^{n_1}, ..., x_i^{n_i}` is a d-sequence of
/// `M / (x_{i+1}^{n_{i+1}}, ..., x_s^{n_s}) M`. When `x` is also a system
/// of parameters, a certificate from the closed form of `chi_1` is
/// attempted.
pub fn is_dd_sequence(m: &FPModule, x: &[Polynomial], n_max: u32) -> Result<DdVerdict> {
    let mut v = strong_d_stage(m, x, n_max)?;
    if v.level < Level::StrongD {
        return Ok(v);
    }
    let s = x.len();
    let pts = grid(s, 1, n_max);
    let mut conds = BTreeSet::new();
    for prefix in 1..s {
        conds.extend(conditions(s, prefix, &pts));
    }
    close_single_exponent(m, x, &mut conds, n_max)?;
    let w = first_failure(m, x, conds, &mut v.record)?;
    if w.is_some() {
        v.witness = w;
        return Ok(v);
    }
    v.level = Level::Dd;
    if m.is_system_of_parameters(x)? {
        v.certificate = certify_dd_via_theorem12(m, x, n_max)?;
    }
    Ok(v)
}

/// `a_i = e(x_1..x_i; (0 : x_{i+1}) in M/(x_{i+2}..x_d)M)` for `i = 0..d-1`.
pub fn chi1_coefficients(m: &FPModule, x: &[Polynomial]) -> Result<Vec<u64>> {
    check_sequence(m.ring(), x)?;
    let d = x.len();
    (0..d)
        .map(|i| {
            let q = m.quotient_by(&x[i + 1..])?;
            let col = colon(q.relations(), &x[i])?;
            let (n, _) = present_image(col.gens(), q.relations())?;
            multiplicity(&x[..i], &n)
        })
        .collect()
}

/// `a_i = e(x_1..x_i; (0 : x_{i+1}) in H_{k-1}(x_{i+2}..x_d; M))` for
/// `i = 0..d-k`.
pub fn chik_coefficients(m: &FPModule, x: &[Polynomial], k: usize) -> Result<Vec<u64>> {
    check_sequence(m.ring(), x)?;
    let d = x.len();
    if k == 0 || k > d {
        return Err(Error::Precondition(format!("need 1 <= k <= d = {d}, got {k}")));
    }
    (0..=d - k)
        .map(|i| {
            let h = KoszulComplex::new(m, &x[i + 1..])?.homology(k - 1)?;
            let col = colon(h.relations(), &x[i])?;
            let (n, _) = present_image(col.gens(), h.relations())?;
            multiplicity(&x[..i], &n)
        })
        .collect()
}

fn prefix_sum(coeffs: &[u64], n: &[u32]) -> u64 {
    let mut prod = 1u64;
    let mut total = 0u64;
    for (i, a) in coeffs.iter().enumerate() {
        if i > 0 {
            prod *= n[i - 1] as u64;
        }
        total += a * prod;
    }
    total
}

/// `sum_{i=0}^{d-1} n_1...n_i e(x_1..x_i; (0 : x_{i+1}) in M/(x_{i+2}..x_d)M)`.
pub fn chi1_rhs_theorem12(m: &FPModule, x: &[Polynomial], n: &[u32]) -> Result<u64> {
    Ok(prefix_sum(&chi1_coefficients(m, x)?, n))
}

/// `sum_{i=0}^{d-k} n_1...n_i e(x_1..x_i; (0 : x_{i+1}) in H_{k-1}(x_{i+2}..x_d; M))`.
pub fn chik_rhs_theorem14(m: &FPModule, x: &[Polynomial], n: &[u32], k: usize) -> Result<u64> {
    Ok(prefix_sum(&chik_coefficients(m, x, k)?, n))
}

/// `chi_k(x(n); M)` for every `n` in `{lo..=hi}^d`, evaluated in parallel.
pub fn chi_grid(m: &FPModule, x: &[Polynomial], k: usize, lo: u32, hi: u32) -> Result<BTreeMap<Vec<u32>, i64>> {
    let pts = grid(x.len(), lo, hi);
    let vals: Vec<Result<(Vec<u32>, i64)>> = pts
        .par_iter()
        .map(|n| Ok((n.clone(), KoszulComplex::with_exponents(m, x, n)?.chi(k)? as i64)))
        .collect();
    vals.into_iter().collect()
}

/// `sum_S lambda_S prod_{i in S} n_i`, with variables numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MultilinearPolynomial {
    pub d: usize,
    /// Nonzero coefficients keyed by sorted variable sets, ordered by size
    /// and then lexicographically.
    pub terms: Vec<(Vec<usize>, i64)>,
}

impl MultilinearPolynomial {
    pub fn from_map(d: usize, map: BTreeMap<Vec<usize>, i64>) -> MultilinearPolynomial {
        let mut terms: Vec<(Vec<usize>, i64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        MultilinearPolynomial { d, terms }
    }

    /// `sum_{i=0}^{len-1} a_i n_1...n_i`.
    pub fn prefix_form(d: usize, a: &[u64]) -> MultilinearPolynomial {
        let map = a.iter().enumerate().map(|(i, &c)| ((1..=i).collect(), c as i64)).collect();
        MultilinearPolynomial::from_map(d, map)
    }

    pub fn coefficient(&self, vars: &[usize]) -> i64 {
        self.terms.iter().find(|(v, _)| v == vars).map_or(0, |(_, c)| *c)
    }

    pub fn eval(&self, n: &[u32]) -> i64 {
        self.terms.iter().map(|(vars, c)| c * vars.iter().map(|&v| n[v - 1] as i64).product::<i64>()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|(v, _)| v.len()).max()
    }
}

impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (vars, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = vars.iter().map(|v| format!("n{v}")).collect();
            let abs = c.abs();
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), abs) {
                (true, _) => write!(f, "{abs}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A multilinear interpolation together with its disagreements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fit {
    pub polynomial: MultilinearPolynomial,
    /// The corner the interpolation used is `{base, base+1}^d`.
    pub base: u32,
    /// `(n, observed - fitted)` for every sample where they differ.
    pub residuals: Vec<(Vec<u32>, i64)>,
}

impl Fit {
    pub fn is_exact(&self) -> bool {
        self.residuals.is_empty()
    }
}

fn residuals(samples: &BTreeMap<Vec<u32>, i64>, p: &MultilinearPolynomial) -> Vec<(Vec<u32>, i64)> {
    samples
        .iter()
        .filter_map(|(n, &v)| {
            let r = v - p.eval(n);
            (r != 0).then(|| (n.clone(), r))
        })
        .collect()
}

/// Interpolates `samples` by a multilinear polynomial through the corner
/// `{base, base+1}^d` and reports residuals on all samples.
pub fn fit_multilinear_at(samples: &BTreeMap<Vec<u32>, i64>, d: usize, base: u32) -> Result<Fit> {
    if d >= 31 {
        return Err(Error::InvalidInput("too many variables for a multilinear fit".into()));
    }
    let full = 1usize << d;
    let corner = |set: usize| -> Result<i64> {
        let n: Vec<u32> = (0..d).map(|q| base + ((set >> q) & 1) as u32).collect();
        samples.get(&n).copied().ok_or_else(|| Error::InvalidInput(format!("missing corner sample {n:?}")))
    };
    // With n = base + u, f = sum_S mu_S prod_{s in S} u_s on {0,1}^d.
    let mut mu = vec![0i64; full];
    for (s, slot) in mu.iter_mut().enumerate() {
        let mut acc = 0;
        let mut r = s;
        loop {
            let sign = if (s & !r).count_ones() % 2 == 0 { 1 } else { -1 };
            acc += sign * corner(r)?;
            if r == 0 {
                break;
            }
            r = (r - 1) & s;
        }
        *slot = acc;
    }
    // prod (n_s - base) = sum_{T subset S} (-base)^{|S \ T|} prod_{t in T} n_t.
    let mut map = BTreeMap::new();
    for t in 0..full {
        let mut acc = 0i64;
        for (s, m) in mu.iter().enumerate() {
            if s & t == t {
                acc += m * (-(base as i64)).pow((s & !t).count_ones());
            }
        }
        let vars: Vec<usize> = (0..d).filter(|q| (t >> q) & 1 == 1).map(|q| q + 1).collect();
        map.insert(vars, acc);
    }
    let polynomial = MultilinearPolynomial::from_map(d, map);
    let residuals = residuals(samples, &polynomial);
    Ok(Fit { polynomial, base, residuals })
}

/// [`fit_multilinear_at`] on the corner `{1,2}^d`.
pub fn fit_multilinear(samples: &BTreeMap<Vec<u32>, i64>, d: usize) -> Result<Fit> {
    fit_multilinear_at(samples, d, 1)
}

/// Grid evidence that `x` is a dd-sequence: `chi_1(x(n); M)` agrees with
/// `sum a_i n_1...n_i` on `{1..grid_max}^d`. Not a proof for all `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub coefficients: Vec<u64>,
    pub fitted: MultilinearPolynomial,
    pub grid_max: u32,
    pub samples: usize,
}

/// Attempts the closed-form certificate for a system of parameters.
pub fn certify_dd_via_theorem12(m: &FPModule, x: &[Polynomial], n_max: u32) -> Result<Option<Certificate>> {
    if !m.is_system_of_parameters(x)? {
        return Err(Error::Precondition("the sequence is not a system of parameters".into()));
    }
    let d = x.len();
    let samples = chi_grid(m, x, 1, 1, n_max + 1)?;
    let fit = fit_multilinear(&samples, d)?;
    if !fit.is_exact() {
        return Ok(None);
    }
    let coefficients = chi1_coefficients(m, x)?;
    if fit.polynomial != MultilinearPolynomial::prefix_form(d, &coefficients) {
        return Ok(None);
    }
    Ok(Some(Certificate { coefficients, fitted: fit.polynomial, grid_max: n_max + 1, samples: samples.len() }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PkValue {
    Degree(usize),
    /// `chi_k` vanished on the whole grid.
    Empty,
}

impl fmt::Display for PkValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PkValue::Degree(d) => write!(f, "{d}"),
            PkValue::Empty => write!(f, "≤ 0 (empty)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PkEstimate {
    pub k: usize,
    pub value: PkValue,
    /// False when no multilinear polynomial matched the whole grid. The fit
    /// is then interpolated on the top corner of the grid and its constant
    /// term raised until it bounds every sample from above.
    pub exact: bool,
    pub fit: Fit,
}

/// Estimates `p_k(M)` as the degree of `chi_k(x(n); M)` fitted on
/// `{1..n_max+1}^d`.
pub fn estimate_pk(m: &FPModule, x: &[Polynomial], k: usize, n_max: u32) -> Result<PkEstimate> {
    if !m.is_system_of_parameters(x)? {
        return Err(Error::Precondition("the sequence is not a system of parameters".into()));
    }
    let d = x.len();
    let samples = chi_grid(m, x, k, 1, n_max + 1)?;
    let mut fit = fit_multilinear(&samples, d)?;
    let exact = fit.is_exact();
    if !exact {
        fit = fit_multilinear_at(&samples, d, n_max)?;
        let excess = fit.residuals.iter().map(|(_, r)| *r).max().unwrap_or(0);
        if excess > 0 {
            let mut map: BTreeMap<Vec<usize>, i64> = fit.polynomial.terms.iter().cloned().collect();
            *map.entry(Vec::new()).or_insert(0) += excess;
            let polynomial = MultilinearPolynomial::from_map(d, map);
            fit = Fit { residuals: residuals(&samples, &polynomial), polynomial, base: n_max };
        }
    }
    let value = fit.polynomial.degree().map_or(PkValue::Empty, PkValue::Degree);
    Ok(PkEstimate { k, value, exact, fit })
}

/// Where `(0 : x_i^n)` stops growing inside a Koszul homology module.
#[derive(Clone, Debug)]
pub struct StabilizationEntry {
    pub k: usize,
    pub i: usize,
    pub exponents: Vec<u32>,
    /// Least `n0 >= 1` with `(0 : x_i^n) = (0 : x_i^{n0})` for all `n >= n0`.
    pub n0: u32,
    /// `H_{k-1}(x_1^{n_1}, ..., omit i, ..., x_d^{n_d}; M)`.
    pub homology: FPModule,
    /// Preimage of the stable colon `(0 : x_i^{n0})` in the homology's cover.
    pub stable: Submodule,
    pub stable_length: Length,
}

/// Computes the stabilization exponent of `(0 : x_i^n)` in
/// `H_{k-1}(x_1^{n_1}, ..., x_{i-1}^{n_{i-1}}, x_{i+1}^{n_{i+1}}, ..., x_d^{n_d}; M)`.
pub fn stabilization_check(m: &FPModule, x: &[Polynomial], k: usize, i: usize, n: &[u32]) -> Result<StabilizationEntry> {
    let d = x.len();
    if k == 0 || i == 0 || i > d {
        return Err(Error::Precondition(format!("need k >= 1 and 1 <= i <= {d}")));
    }
    let xn = powers(x, n)?;
    let others: Vec<Polynomial> = xn.iter().enumerate().filter(|(q, _)| *q != i - 1).map(|(_, p)| p.clone()).collect();
    let homology = KoszulComplex::new(m, &others)?.homology(k - 1)?;
    let (stable, e) = saturate(homology.relations(), &x[i - 1])?;
    let stable_length = length_between(&stable, homology.relations())?;
    Ok(StabilizationEntry { k, i, exponents: n.to_vec(), n0: e.max(1), homology, stable, stable_length })
}

/// [`stabilization_check`] for every `1 <= k <= d` and `1 <= i <= d`.
pub fn stabilization_report(m: &FPModule, x: &[Polynomial], n: &[u32]) -> Result<Vec<StabilizationEntry>> {
    let d = x.len();
    let pairs: Vec<(usize, usize)> = (1..=d).flat_map(|k| (1..=d).map(move |i| (k, i))).collect();
    pairs.par_iter().map(|&(k, i)| stabilization_check(m, x, k, i, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::Ring;

    #[test]
    fn grid_is_lexicographic() {
        assert_eq!(grid(2, 1, 2), vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(grid(0, 1, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn fit_recovers_a_prefix_polynomial() {
        let f = |n: &[u32]| 1 + n[0] as i64 + (n[0] * n[1]) as i64;
        let samples: BTreeMap<Vec<u32>, i64> = grid(2, 1, 3).into_iter().map(|n| { let v = f(&n); (n, v) }).collect();
        let fit = fit_multilinear(&samples, 2).unwrap();
        assert!(fit.is_exact());
        assert_eq!(fit.polynomial.coefficient(&[]), 1);
        assert_eq!(fit.polynomial.coefficient(&[1]), 1);
        assert_eq!(fit.polynomial.coefficient(&[2]), 0);
        assert_eq!(fit.polynomial.coefficient(&[1, 2]), 1);
        assert_eq!(fit.polynomial.to_string(), "1 + n1 + n1*n2");
        let upper = fit_multilinear_at(&samples, 2, 2).unwrap();
        assert_eq!(upper.polynomial, fit.polynomial);
    }

    #[test]
    fn fit_detects_a_jump_and_constants() {
        let samples: BTreeMap<Vec<u32>, i64> =
            grid(2, 1, 3).into_iter().map(|n| { let v = if n[0] == 1 { 2 } else { 3 }; (n, v) }).collect();
        assert!(!fit_multilinear(&samples, 2).unwrap().is_exact());
        let constant: BTreeMap<Vec<u32>, i64> = grid(3, 1, 2).into_iter().map(|n| (n, 7)).collect();
        let fit = fit_multilinear(&constant, 3).unwrap();
        assert_eq!(fit.polynomial.terms, vec![(vec![], 7)]);
        let mut missing = constant.clone();
        missing.remove(&vec![2, 2, 2]);
        assert!(fit_multilinear(&missing, 3).is_err());
    }

    #[test]
    fn regular_sequences_are_dd() {
        let r = Ring::new(&["X", "Y"], FieldSpec::Rational).unwrap();
        let m = FPModule::free(&r, vec![0]);
        let x = vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1)];
        let v = is_dd_sequence(&m, &x, 2).unwrap();
        assert_eq!(v.level, Level::Dd);
        let cert = v.certificate.expect("certificate");
        assert_eq!(cert.coefficients, vec![0, 0]);
        let pk = estimate_pk(&m, &x, 1, 2).unwrap();
        assert_eq!(pk.value, PkValue::Empty);
        assert_eq!(pk.value.to_string(), "≤ 0 (empty)");
    }
}
