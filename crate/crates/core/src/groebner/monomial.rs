//! Combinatorics of monomial submodules: standard monomials, Hilbert series
//! numerators and Krull dimension.

use std::collections::BTreeMap;

use crate::ring::{Monomial, Ring};

use super::{FreeModule, GroebnerBasis};

/// A submodule `J_1 e_1 + ... + J_r e_r` of a graded free module, where each
/// `J_p` is a monomial ideal given by minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    ring: Ring,
    shifts: Vec<i64>,
    ideals: Vec<Vec<Monomial>>,
}

impl MonomialModule {
    pub fn new(space: &FreeModule, mut ideals: Vec<Vec<Monomial>>) -> MonomialModule {
        assert_eq!(ideals.len(), space.rank());
        for j in &mut ideals {
            *j = minimalize(std::mem::take(j));
        }
        MonomialModule { ring: space.ring().clone(), shifts: space.shifts().to_vec(), ideals }
    }

    /// The leading-term module of a Gröbner basis.
    pub fn leading(gb: &GroebnerBasis) -> MonomialModule {
        let space = gb.space();
        let mut ideals = vec![Vec::new(); space.rank()];
        for (p, m) in gb.leading_terms() {
            ideals[p].push(m);
        }
        MonomialModule::new(space, ideals)
    }

    pub fn ideals(&self) -> &[Vec<Monomial>] {
        &self.ideals
    }

    /// Number of standard monomials of `F / J`, or `None` when infinite.
    pub fn colength(&self) -> Option<u64> {
        let mut total = 0u64;
        for j in &self.ideals {
            total += ideal_colength(&self.ring, j)?;
        }
        Some(total)
    }

    /// Standard monomials `(position, monomial)` of `F / J`, or `None` when
    /// there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<(usize, Monomial)>> {
        let mut out = Vec::new();
        for (p, j) in self.ideals.iter().enumerate() {
            for m in ideal_standard_monomials(&self.ring, j)? {
                out.push((p, m));
            }
        }
        Some(out)
    }

    /// Krull dimension of `F / J`; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.ideals.iter().filter_map(|j| ideal_dimension(self.ring.nvars(), j)).max()
    }

    /// Numerator of the Hilbert series of `F / J` over `prod (1 - t^{w_i})`.
    pub fn hilbert_numerator(&self) -> HilbertNumerator {
        let mut acc = HilbertNumerator::zero();
        for (j, &s) in self.ideals.iter().zip(&self.shifts) {
            acc = acc.add(&ideal_numerator(&self.ring, j).shift(s));
        }
        acc
    }
}

/// Keeps only the minimal generators of a monomial ideal, sorted.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Dimension of `k[X]/J`, or `None` if `J` is the unit ideal.
pub fn ideal_dimension(nvars: usize, gens: &[Monomial]) -> Option<usize> {
    if gens.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let mut best = 0;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Some(best)
}

fn pure_power_bounds(nvars: usize, gens: &[Monomial]) -> Option<Vec<u32>> {
    let mut bound = vec![None; nvars];
    for m in gens {
        let sup: Vec<usize> = m.support().collect();
        if sup.len() == 1 {
            let i = sup[0];
            let e = m.exponents()[i];
            bound[i] = Some(bound[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    bound.into_iter().collect()
}

fn ideal_colength(ring: &Ring, gens: &[Monomial]) -> Option<u64> {
    if gens.iter().any(Monomial::is_one) {
        return Some(0);
    }
    let q = ideal_numerator(ring, gens).divide_by_denominator(ring.weights())?;
    Some(q.at_one().try_into().expect("nonnegative colength"))
}

fn ideal_standard_monomials(ring: &Ring, gens: &[Monomial]) -> Option<Vec<Monomial>> {
    if gens.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let bounds = pure_power_bounds(ring.nvars(), gens)?;
    let mut out = Vec::new();
    let mut exps = vec![0u32; ring.nvars()];
    loop {
        let m = ring.monomial(&exps);
        if !gens.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Some(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// A Laurent polynomial in `t` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertNumerator {
    coeffs: BTreeMap<i64, i128>,
}

impl HilbertNumerator {
    pub fn zero() -> HilbertNumerator {
        HilbertNumerator::default()
    }

    pub fn monomial(deg: i64, c: i128) -> HilbertNumerator {
        let mut h = HilbertNumerator::zero();
        h.push(deg, c);
        h
    }

    fn push(&mut self, deg: i64, c: i128) {
        let e = self.coeffs.entry(deg).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&deg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, i128> {
        &self.coeffs
    }

    pub fn add(&self, o: &HilbertNumerator) -> HilbertNumerator {
        let mut h = self.clone();
        for (&d, &c) in &o.coeffs {
            h.push(d, c);
        }
        h
    }

    pub fn sub(&self, o: &HilbertNumerator) -> HilbertNumerator {
        let mut h = self.clone();
        for (&d, &c) in &o.coeffs {
            h.push(d, -c);
        }
        h
    }

    pub fn mul(&self, o: &HilbertNumerator) -> HilbertNumerator {
        let mut h = HilbertNumerator::zero();
        for (&a, &x) in &self.coeffs {
            for (&b, &y) in &o.coeffs {
                h.push(a + b, x * y);
            }
        }
        h
    }

    pub fn shift(&self, s: i64) -> HilbertNumerator {
        HilbertNumerator { coeffs: self.coeffs.iter().map(|(&d, &c)| (d + s, c)).collect() }
    }

    pub fn at_one(&self) -> i128 {
        self.coeffs.values().sum()
    }

    /// Exact quotient by `1 - t^w`, if it is a Laurent polynomial.
    pub fn divide_by_one_minus(&self, w: i64) -> Option<HilbertNumerator> {
        let (Some(&lo), Some(&hi)) = (self.coeffs.keys().next(), self.coeffs.keys().next_back()) else {
            return Some(HilbertNumerator::zero());
        };
        // q_k = p_k + q_{k-w}; the quotient is a polynomial exactly when the
        // last w values of q vanish.
        let mut q: BTreeMap<i64, i128> = BTreeMap::new();
        for k in lo..=hi {
            let prev = q.get(&(k - w)).copied().unwrap_or(0);
            let v = self.coeffs.get(&k).copied().unwrap_or(0) + prev;
            q.insert(k, v);
        }
        if (hi - w + 1..=hi).any(|k| q.get(&k).copied().unwrap_or(0) != 0) {
            return None;
        }
        let coeffs = q.into_iter().filter(|&(k, c)| k <= hi - w && c != 0).collect();
        Some(HilbertNumerator { coeffs })
    }

    /// Exact quotient by `prod (1 - t^{w_i})`.
    pub fn divide_by_denominator(&self, weights: &[u32]) -> Option<HilbertNumerator> {
        let mut h = self.clone();
        for &w in weights {
            h = h.divide_by_one_minus(w as i64)?;
        }
        Some(h)
    }
}

/// Hilbert series numerator of `k[X]/J` via pivoting on variable powers:
/// `N(J) = N(J + (p)) + t^{deg p} N(J : p)`.
pub fn ideal_numerator(ring: &Ring, gens: &[Monomial]) -> HilbertNumerator {
    let gens = minimalize(gens.to_vec());
    numerator_rec(ring, gens)
}

fn numerator_rec(ring: &Ring, gens: Vec<Monomial>) -> HilbertNumerator {
    if gens.is_empty() {
        return HilbertNumerator::monomial(0, 1);
    }
    if gens.iter().any(Monomial::is_one) {
        return HilbertNumerator::zero();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut h = HilbertNumerator::monomial(0, 1);
        for g in &gens {
            h = h.mul(&HilbertNumerator::monomial(0, 1).sub(&HilbertNumerator::monomial(g.degree() as i64, 1)));
        }
        return h;
    }
    // Pivot on the variable shared by the most non-coprime generators.
    let n = ring.nvars();
    let mut count = vec![0usize; n];
    for g in &gens {
        if g.support().count() > 1 {
            for i in g.support() {
                count[i] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).expect("nvars > 0");
    // Exponents from mixed generators stay below any pure power of `var` in
    // a minimal generating set, so the pivot is never already in the ideal.
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|g| g.support().count() > 1)
        .map(|g| g.exponents()[var])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let mut pe = vec![0u32; n];
    pe[var] = e;
    let pivot = ring.monomial(&pe);

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let plus = minimalize(plus);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut x = g.exponents().to_vec();
            x[var] = x[var].saturating_sub(e);
            ring.monomial(&x)
        })
        .collect();
    let colon = minimalize(colon);
    numerator_rec(ring, plus).add(&numerator_rec(ring, colon).shift(pivot.degree() as i64))
}
