//! Lengths of local cohomology at the irrelevant ideal, standard systems of
//! parameters and the Cohen–Macaulay test.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::koszul::{KoszulComplex, binom, powers};
use crate::module::{FPModule, check_sequence};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::sequences::{Fit, Level, PkValue, estimate_pk, fit_multilinear, grid, is_dd_sequence};

/// `length(H^0_m(M))`.
pub fn h0_length(m: &FPModule) -> Result<u64> {
    m.h0_length()
}

/// Homogeneous candidates for parameter elements, in the order tried:
/// variables, sums and differences of two variables, then Vandermonde forms.
pub fn linear_candidates(ring: &Ring) -> Vec<Polynomial> {
    let n = ring.nvars();
    let var = |i| Polynomial::var(ring, i);
    let mut out: Vec<Polynomial> = (0..n).map(var).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(var(i).add(&var(j)));
            out.push(var(i).sub(&var(j)));
        }
    }
    for c in 2..(n as i64 + 4) {
        let mut f = Polynomial::zero(ring);
        let mut coeff = 1i64;
        for i in 0..n {
            f = f.add(&var(i).scale(&ring.field().from_i64(coeff)));
            coeff = coeff.saturating_mul(c);
        }
        out.push(f);
    }
    out
}

fn dim_or_neg(m: &FPModule) -> Result<i64> {
    Ok(m.krull_dim()?.map_or(-1, |d| d as i64))
}

/// A homogeneous system of parameters for `M`, built greedily from
/// [`linear_candidates`]. Fails with [`Error::SopSearch`] if the candidates
/// run out.
pub fn find_sop(m: &FPModule) -> Result<Vec<Polynomial>> {
    let cands = linear_candidates(m.ring());
    let mut seq = Vec::new();
    let mut q = m.clone();
    let mut dim = dim_or_neg(&q)?;
    while dim > 0 {
        let mut found = None;
        for c in &cands {
            let next = q.quotient_by(std::slice::from_ref(c))?;
            let nd = dim_or_neg(&next)?;
            if nd == dim - 1 {
                found = Some((c.clone(), next, nd));
                break;
            }
        }
        let (c, next, nd) = found.ok_or_else(|| Error::SopSearch(format!("no parameter element among {} candidates", cands.len())))?;
        seq.push(c);
        q = next;
        dim = nd;
    }
    Ok(seq)
}

/// Cohen–Macaulay test via `chi_1(y; M) = 0` for a system of parameters `y`.
/// The zero module counts as Cohen–Macaulay.
pub fn is_cohen_macaulay(m: &FPModule) -> Result<bool> {
    match m.krull_dim()? {
        None | Some(0) => Ok(true),
        Some(_) => {
            let y = find_sop(m)?;
            Ok(KoszulComplex::new(m, &y)?.chi(1)? == 0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardReport {
    pub standard: bool,
    /// Values of `chi_1(x(n); M)` on `{1..grid_max}^d`.
    pub values: BTreeMap<Vec<u32>, u64>,
    pub grid_max: u32,
}

/// `chi_1(x(n); M)` is constant on `{1..n_max+1}^d`. Bounded evidence for
/// `x` being standard.
pub fn is_standard_sop(m: &FPModule, x: &[Polynomial], n_max: u32) -> Result<StandardReport> {
    if !m.is_system_of_parameters(x)? {
        return Err(Error::Precondition("the sequence is not a system of parameters".into()));
    }
    let pts = grid(x.len(), 1, n_max + 1);
    let vals: Vec<Result<(Vec<u32>, u64)>> =
        pts.par_iter().map(|n| Ok((n.clone(), KoszulComplex::with_exponents(m, x, n)?.chi(1)?))).collect();
    let values: BTreeMap<Vec<u32>, u64> = vals.into_iter().collect::<Result<_>>()?;
    let first = values.values().next().copied();
    let standard = values.values().all(|v| Some(*v) == first);
    Ok(StandardReport { standard, values, grid_max: n_max + 1 })
}

/// `sum_{j=0}^{i} (-1)^{i-j} C(i, j) length(H^0_m(M/(x_1..x_j)M))`, with no
/// checks on `x`.
fn alternating_h0_sum(m: &FPModule, x: &[Polynomial], i: usize) -> Result<i64> {
    let terms: Vec<Result<i64>> = (0..=i)
        .into_par_iter()
        .map(|j| {
            let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
            Ok(sign * binom(i as i64, j as i64) * m.quotient_by(&x[..j])?.h0_length()? as i64)
        })
        .collect();
    terms.into_iter().sum()
}

/// `length(H^i_m(M))` for a generalized Cohen–Macaulay module and a standard
/// system of parameters `x`, as the alternating binomial sum of
/// `length(H^0_m(M/(x_1..x_j)M))`. Standardness is checked on
/// `{1..n_max+1}^d`.
pub fn lc_length_lemma51(m: &FPModule, x: &[Polynomial], i: usize, n_max: u32) -> Result<u64> {
    let d = x.len();
    if i >= d {
        return Err(Error::Precondition(format!("need i < dim M = {d}, got {i}")));
    }
    if !is_standard_sop(m, x, n_max)?.standard {
        return Err(Error::Precondition("chi_1 is not constant on the grid; the sequence is not standard".into()));
    }
    let v = alternating_h0_sum(m, x, i)?;
    u64::try_from(v).map_err(|_| Error::Precondition(format!("negative alternating sum {v}: the sequence is not standard")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyFit {
    pub k: usize,
    pub i: usize,
    /// `length(H^i_m(M/(x_1^{n_1}, ..., x_k^{n_k})M))` keyed by `(n_1..n_k)`.
    pub values: BTreeMap<Vec<u32>, i64>,
    pub fit: Fit,
}

/// Tabulates `length(H^i_m(M/(x_1^{n_1}, ..., x_k^{n_k})M))` for `n` in
/// `{1..n_max+1}^k` and fits a multilinear polynomial. `x` must pass the dd
/// test at `n_max` and `k` must be at least the estimated `p_1(M)`. The
/// lengths use the alternating `H^0` sum with the tail `x_{k+1}, ..., x_d`
/// as the standard system of parameters of each quotient.
pub fn theorem13_check(m: &FPModule, x: &[Polynomial], k: usize, i: usize, n_max: u32) -> Result<LocalCohomologyFit> {
    check_sequence(m.ring(), x)?;
    let d = x.len();
    if k > d || i + k >= d {
        return Err(Error::Precondition(format!("need k <= d and i < d - k (d = {d}, k = {k}, i = {i})")));
    }
    let verdict = is_dd_sequence(m, x, n_max)?;
    if verdict.level != Level::Dd {
        return Err(Error::Precondition(format!("the sequence is {}, not dd", verdict.level)));
    }
    if let PkValue::Degree(p) = estimate_pk(m, x, 1, n_max)?.value {
        if k < p {
            return Err(Error::Precondition(format!("k = {k} is below the estimated p_1 = {p}")));
        }
    }
    let pts = grid(k, 1, n_max + 1);
    let vals: Vec<Result<(Vec<u32>, i64)>> = pts
        .par_iter()
        .map(|n| {
            let head = powers(&x[..k], n)?;
            let q = m.quotient_by(&head)?;
            Ok((n.clone(), alternating_h0_sum(&q, &x[k..], i)?))
        })
        .collect();
    let values: BTreeMap<Vec<u32>, i64> = vals.into_iter().collect::<Result<_>>()?;
    let fit = fit_multilinear(&values, k)?;
    Ok(LocalCohomologyFit { k, i, values, fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn sop_search_and_cm_test() {
        let r = Ring::new(&["x", "y"], FieldSpec::Rational).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let node = FPModule::quotient_ring(&r, &[p("x*y")]).unwrap();
        let y = find_sop(&node).unwrap();
        assert_eq!(y.len(), 1);
        assert!(node.is_system_of_parameters(&y).unwrap());
        assert!(is_cohen_macaulay(&node).unwrap());
        // The embedded point makes depth zero.
        let fat = FPModule::quotient_ring(&r, &[p("x^2"), p("x*y")]).unwrap();
        assert!(!is_cohen_macaulay(&fat).unwrap());
        assert_eq!(h0_length(&fat).unwrap(), 1);
    }
}
