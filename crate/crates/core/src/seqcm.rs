//! Dimension filtrations, sequentially Cohen–Macaulay modules and
//! distinguished systems of parameters.
//!
//! Filtrations are computed only for cyclic modules `R/I` with `I`
//! monomial, through a monomial primary decomposition. Any other module
//! needs a candidate chain, which is accepted only when every layer is
//! Cohen–Macaulay and the layer dimensions strictly increase; such a chain
//! is necessarily the dimension filtration.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::monomial::minimalize;
use crate::groebner::{FreeModule, Submodule, Vector};
use crate::koszul::{binom, multiplicity, powers};
use crate::localcoh::{is_cohen_macaulay, linear_candidates};
use crate::module::{FPModule, check_sequence, intersect, present_image};
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// A primary component of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimaryComponent {
    /// Variable indices generating the associated prime.
    pub prime: Vec<usize>,
    /// Minimal monomial generators of the component.
    #[serde(skip)]
    pub gens: Vec<Monomial>,
    /// The same generators, printed.
    pub display: Vec<String>,
}

impl PrimaryComponent {
    /// `dim R/p`.
    pub fn dimension(&self, nvars: usize) -> usize {
        nvars - self.prime.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialPrimaryDecomposition {
    pub components: Vec<PrimaryComponent>,
}

fn in_ideal(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

fn contains_ideal(big: &[Monomial], small: &[Monomial]) -> bool {
    small.iter().all(|m| in_ideal(m, big))
}

/// Intersection of monomial ideals given by generators.
pub fn intersect_monomial(a: &[Monomial], b: &[Monomial], weights: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.lcm(y, weights));
        }
    }
    minimalize(out)
}

fn split(gens: Vec<Monomial>, ring: &Ring, out: &mut Vec<Vec<Monomial>>) {
    let gens = minimalize(gens);
    if gens.iter().any(|g| g.is_one()) {
        return;
    }
    let mixed = gens.iter().find(|g| g.support().count() > 1);
    match mixed {
        None => out.push(gens),
        Some(g) => {
            let v = g.support().next().unwrap();
            let e = g.exponents()[v];
            let mut pure = vec![0; ring.nvars()];
            pure[v] = e;
            let pure = ring.monomial(&pure);
            let rest = g.div(&pure).unwrap();
            let mut a = gens.clone();
            a.push(pure);
            let mut b = gens;
            b.push(rest);
            split(a, ring, out);
            split(b, ring, out);
        }
    }
}

/// Irredundant decomposition of a monomial ideal into ideals generated by
/// pure powers of variables.
pub fn irreducible_decomposition(ring: &Ring, gens: &[Monomial]) -> Vec<Vec<Monomial>> {
    let mut all = Vec::new();
    split(gens.to_vec(), ring, &mut all);
    for c in &mut all {
        c.sort();
    }
    all.sort();
    all.dedup();
    let keep: Vec<bool> = (0..all.len())
        .map(|i| !(0..all.len()).any(|j| j != i && contains_ideal(&all[i], &all[j])))
        .collect();
    all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

/// Primary decomposition of a monomial ideal: irreducible components with
/// the same radical are intersected.
pub fn monomial_primary_decomposition(ring: &Ring, gens: &[Monomial]) -> MonomialPrimaryDecomposition {
    let mut by_prime: Vec<(Vec<usize>, Vec<Monomial>)> = Vec::new();
    for c in irreducible_decomposition(ring, gens) {
        let prime: Vec<usize> = c.iter().flat_map(|m| m.support().collect::<Vec<_>>()).collect::<BTreeSet<_>>().into_iter().collect();
        match by_prime.iter_mut().find(|(p, _)| *p == prime) {
            Some((_, q)) => *q = intersect_monomial(q, &c, ring.weights()),
            None => by_prime.push((prime, c)),
        }
    }
    by_prime.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let components = by_prime
        .into_iter()
        .map(|(prime, mut gens)| {
            gens.sort();
            let display = gens.iter().map(|m| ring.fmt_monomial(m)).collect();
            PrimaryComponent { prime, gens, display }
        })
        .collect();
    MonomialPrimaryDecomposition { components }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MonomialPrimaryDecomposition,
    UserSuppliedVerified,
}

/// `M_0 ⊂ M_1 ⊂ ... ⊂ M_t = M`, each `M_i` stored as its preimage in the
/// free cover of `M`.
#[derive(Clone, Debug)]
pub struct DimensionFiltration {
    pub chain: Vec<Submodule>,
    pub dims: Vec<usize>,
    pub provenance: Provenance,
    /// `M_0 = H^0_m(M)` is zero. Its entry in `dims` is then 0 by
    /// convention; the chain read as starting from `0 = M_0` is the same.
    pub bottom_is_zero: bool,
    pub decomposition: Option<MonomialPrimaryDecomposition>,
}

impl DimensionFiltration {
    /// `t`, the index of the top layer.
    pub fn top(&self) -> usize {
        self.chain.len() - 1
    }

    /// `M_i` as a module in its own right.
    pub fn layer_module(&self, m: &FPModule, i: usize) -> Result<FPModule> {
        Ok(present_image(self.chain[i].gens(), m.relations())?.0)
    }

    /// `M_i / M_{i-1}`, with `M_{-1} = 0`.
    pub fn quotient_module(&self, m: &FPModule, i: usize) -> Result<FPModule> {
        let below = if i == 0 { m.relations() } else { &self.chain[i - 1] };
        Ok(present_image(self.chain[i].gens(), below)?.0)
    }

    pub fn render(&self, m: &FPModule) -> Result<Vec<Vec<String>>> {
        self.chain.iter().map(|s| m.render_submodule(s)).collect()
    }
}

fn monomial_relations(m: &FPModule) -> Result<Option<Vec<Monomial>>> {
    if m.space().rank() != 1 {
        return Ok(None);
    }
    let gb = m.relations().gb()?;
    let mut out = Vec::new();
    for v in gb.elements() {
        if v.terms().len() != 1 {
            return Ok(None);
        }
        out.push(v.terms()[0].mono.clone());
    }
    Ok(Some(out))
}

fn ideal_submodule(space: &FreeModule, gens: &[Monomial]) -> Submodule {
    let ring = space.ring();
    let vs = gens.iter().map(|g| Vector::from_poly(space, 0, &Polynomial::monomial(ring, g.clone(), ring.field().one()))).collect();
    Submodule::new(space, vs)
}

/// The dimension filtration of `R/I` for a monomial ideal `I`, with
/// `M_i = (intersection of the components Q_j with dim R/p_j > d_i) / I`.
pub fn dimension_filtration(m: &FPModule) -> Result<DimensionFiltration> {
    let Some(ideal) = monomial_relations(m)? else {
        return Err(Error::Precondition(
            "filtrations are computed only for R/I with I monomial; supply a candidate chain".into(),
        ));
    };
    let ring = m.ring();
    let n = ring.nvars();
    let Some(d) = m.krull_dim()? else {
        return Err(Error::Precondition("the zero module has no dimension filtration".into()));
    };
    let dec = monomial_primary_decomposition(ring, &ideal);
    let dims: BTreeSet<usize> = dec.components.iter().map(|c| c.dimension(n)).collect();
    let mut chain = Vec::new();
    let mut layer_dims = Vec::new();
    let bottom_is_zero = !dims.contains(&0) && d > 0;
    if bottom_is_zero {
        chain.push(m.relations().clone());
        layer_dims.push(0);
    }
    for &delta in &dims {
        if delta == d {
            break;
        }
        let mut acc: Option<Vec<Monomial>> = None;
        for c in dec.components.iter().filter(|c| c.dimension(n) > delta) {
            acc = Some(match acc {
                None => c.gens.clone(),
                Some(a) => intersect_monomial(&a, &c.gens, ring.weights()),
            });
        }
        chain.push(ideal_submodule(m.space(), &acc.unwrap_or_default()));
        layer_dims.push(delta);
    }
    chain.push(m.whole());
    layer_dims.push(d);
    Ok(DimensionFiltration {
        chain,
        dims: layer_dims,
        provenance: Provenance::MonomialPrimaryDecomposition,
        bottom_is_zero,
        decomposition: Some(dec),
    })
}

/// Accepts a candidate chain `M_0 ⊂ ... ⊂ M_t = M` (preimages in the free
/// cover, including the relations) when the inclusions are strict, the
/// layers `M_i / M_{i-1}` are Cohen–Macaulay and their dimensions strictly
/// increase. A zero `M_0` is allowed.
pub fn verify_filtration(m: &FPModule, chain: Vec<Submodule>) -> Result<DimensionFiltration> {
    if chain.is_empty() {
        return Err(Error::InvalidInput("empty chain".into()));
    }
    let rel = m.relations();
    let mut full = Vec::with_capacity(chain.len());
    for s in chain {
        full.push(s.sum(rel)?);
    }
    if !full.last().unwrap().equals(&m.whole())? {
        return Err(Error::Precondition("the chain does not end at M".into()));
    }
    for w in full.windows(2) {
        if !w[0].is_subset_of(&w[1])? || w[1].is_subset_of(&w[0])? {
            return Err(Error::Precondition("the chain is not strictly increasing".into()));
        }
    }
    let bottom_is_zero = full[0].is_subset_of(rel)?;
    let mut filt = DimensionFiltration {
        dims: Vec::new(),
        chain: full,
        provenance: Provenance::UserSuppliedVerified,
        bottom_is_zero,
        decomposition: None,
    };
    let mut prev: Option<usize> = None;
    for i in 0..filt.chain.len() {
        if i == 0 && bottom_is_zero {
            filt.dims.push(0);
            continue;
        }
        let q = filt.quotient_module(m, i)?;
        let d = q.krull_dim()?.unwrap_or(0);
        if prev.is_some_and(|p| d <= p) || (i > 0 && !bottom_is_zero && filt.dims[i - 1] >= d) {
            return Err(Error::Precondition(format!("layer {i} does not raise the dimension")));
        }
        if !is_cohen_macaulay(&q)? {
            return Err(Error::Precondition(format!("layer {i} is not Cohen-Macaulay; maximality cannot be certified")));
        }
        filt.dims.push(d);
        prev = Some(d);
    }
    Ok(filt)
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerReport {
    pub index: usize,
    pub dim: usize,
    pub cohen_macaulay: bool,
}

#[derive(Clone, Debug)]
pub struct SeqCmReport {
    pub filtration: DimensionFiltration,
    pub layers: Vec<LayerReport>,
    pub sequentially_cm: bool,
}

/// Checks that every `M_i / M_{i-1}` of the dimension filtration is
/// Cohen–Macaulay.
pub fn is_sequentially_cm(m: &FPModule, filtration: Option<DimensionFiltration>) -> Result<SeqCmReport> {
    let filtration = match filtration {
        Some(f) => f,
        None => dimension_filtration(m)?,
    };
    let layers: Vec<Result<LayerReport>> = (0..filtration.chain.len())
        .into_par_iter()
        .map(|i| {
            let q = filtration.quotient_module(m, i)?;
            Ok(LayerReport { index: i, dim: filtration.dims[i], cohen_macaulay: is_cohen_macaulay(&q)? })
        })
        .collect();
    let layers: Vec<LayerReport> = layers.into_iter().collect::<Result<_>>()?;
    let sequentially_cm = layers.iter().all(|l| l.cohen_macaulay);
    Ok(SeqCmReport { filtration, layers, sequentially_cm })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishedReport {
    /// `M_i ∩ (x_{d_i+1}, ..., x_d) M = 0` for every `i < t`.
    pub intersection_zero: bool,
    /// `(x_{d_i+1}, ..., x_d) M_i = 0` for every `i < t`.
    pub annihilated: bool,
    /// Per layer `i < t`: (intersection, annihilation).
    pub layers: Vec<(bool, bool)>,
}

/// Checks both forms of the distinguished condition for a system of
/// parameters `x`.
pub fn is_distinguished(m: &FPModule, x: &[Polynomial], f: &DimensionFiltration) -> Result<DistinguishedReport> {
    if !m.is_system_of_parameters(x)? {
        return Err(Error::Precondition("the sequence is not a system of parameters".into()));
    }
    let rel = m.relations();
    let mut layers = Vec::new();
    for i in 0..f.top() {
        let tail = &x[f.dims[i].min(x.len())..];
        let mi = &f.chain[i];
        let mut ann = true;
        'outer: for g in mi.gens() {
            for y in tail {
                if !rel.contains(&g.mul_poly(m.space(), y))? {
                    ann = false;
                    break 'outer;
                }
            }
        }
        let meet = intersect(mi, &m.ideal_times(tail))?;
        layers.push((meet.is_subset_of(rel)?, ann));
    }
    Ok(DistinguishedReport {
        intersection_zero: layers.iter().all(|l| l.0),
        annihilated: layers.iter().all(|l| l.1),
        layers,
    })
}

fn candidates(ring: &Ring, ann: &Submodule) -> Result<Vec<Polynomial>> {
    let linear = linear_candidates(ring);
    let mut out = linear.clone();
    for e in 2..=4 {
        out.extend(linear.iter().map(|l| l.pow(e)));
    }
    let gens: Vec<Polynomial> = ann.gb()?.elements().iter().map(|v| v.component(ann.space(), 0)).collect();
    for (a, g) in gens.iter().enumerate() {
        out.push(g.clone());
        for h in &gens[a + 1..] {
            if g.homogeneous_degree() == h.homogeneous_degree() {
                out.push(g.add(h));
            }
        }
    }
    Ok(out)
}

/// Greedy search for a system of parameters with `(x_{d_i+1}, ..., x_d) M_i = 0`
/// for every layer, choosing `x_d` first.
pub fn distinguished_sop(m: &FPModule, f: &DimensionFiltration) -> Result<Vec<Polynomial>> {
    let d = *f.dims.last().unwrap();
    let r1 = FreeModule::standard(m.ring(), 1);
    let anns: Vec<Submodule> =
        (0..f.top()).map(|i| f.layer_module(m, i)?.annihilator()).collect::<Result<_>>()?;
    let mut chosen: Vec<Polynomial> = Vec::new();
    for p in (1..=d).rev() {
        // The largest layer of dimension below p gives the smallest annihilator.
        let ann = (0..f.top()).rev().find(|&i| f.dims[i] < p).map(|i| &anns[i]);
        let ann = ann.cloned().unwrap_or_else(|| Submodule::full(&r1));
        let mut pick = None;
        for c in candidates(m.ring(), &ann)? {
            if !ann.contains(&Vector::from_poly(&r1, 0, &c))? {
                continue;
            }
            let mut seq = vec![c.clone()];
            seq.extend(chosen.iter().cloned());
            if m.quotient_by(&seq)?.krull_dim()?.unwrap_or(0) == p - 1 {
                pick = Some(c);
                break;
            }
        }
        let c = pick.ok_or_else(|| Error::SopSearch(format!("no admissible element for position {p}")))?;
        chosen.insert(0, c);
    }
    Ok(chosen)
}

/// `a_{t-r}` for `r = t, ..., 1`, returned by layer index `0..t`:
/// the sum over `(j_1, ..., j_r)` with `j_1 + ... + j_{r-1} <= k - 1` and
/// `j_1 + ... + j_r >= k` of `(-1)^{j_1 + ... + j_r - k}` times
/// `C(d_t - d_{t-1}, j_1) C(d_{t-1} - d_{t-2}, j_2) ... C(d_{t-r+1} - d_{t-r}, j_r)`.
pub fn theorem15_coefficients(dims: &[usize], k: usize) -> Result<Vec<i64>> {
    if k == 0 {
        return Err(Error::Precondition("need k >= 1".into()));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("dimensions must strictly increase".into()));
    }
    let t = dims.len() - 1;
    let k = k as i64;
    let mut out = vec![0; t];
    for (i, slot) in out.iter_mut().enumerate() {
        let r = t - i;
        let gaps: Vec<i64> = (1..=r).map(|l| (dims[t - l + 1] - dims[t - l]) as i64).collect();
        fn walk(gaps: &[i64], k: i64, sum: i64, prod: i64) -> i64 {
            match gaps {
                [] => 0,
                [last] => (0..=*last)
                    .filter(|j| sum + j >= k)
                    .map(|j| {
                        let sign = if (sum + j - k) % 2 == 0 { 1 } else { -1 };
                        sign * prod * binom(*last, j)
                    })
                    .sum(),
                [c, rest @ ..] => (0..=*c)
                    .filter(|j| sum + j <= k - 1)
                    .map(|j| walk(rest, k, sum + j, prod * binom(*c, j)))
                    .sum(),
            }
        }
        *slot = walk(&gaps, k, 0, 1);
    }
    Ok(out)
}

/// `sum_{d_i <= d-k} a_i n_1...n_{d_i} e(x_1, ..., x_{d_i}; M_i)`.
pub fn theorem15_chi(m: &FPModule, x: &[Polynomial], n: &[u32], k: usize, f: &DimensionFiltration) -> Result<u64> {
    check_sequence(m.ring(), x)?;
    let d = x.len();
    let a = theorem15_coefficients(&f.dims, k)?;
    let mut total = 0i64;
    for (i, ai) in a.iter().enumerate() {
        let di = f.dims[i];
        if di + k > d || *ai == 0 {
            continue;
        }
        let e = multiplicity(&x[..di], &f.layer_module(m, i)?)? as i64;
        let scale: i64 = n[..di].iter().map(|&v| v as i64).product();
        total += ai * scale * e;
    }
    u64::try_from(total).map_err(|_| Error::Precondition(format!("negative value {total}")))
}

/// `M / (x_1^{n_1}, ..., x_s^{n_s}) M` together with the image of a chain.
pub fn quotient_chain(m: &FPModule, x: &[Polynomial], n: &[u32], chain: &[Submodule]) -> Result<(FPModule, Vec<Submodule>)> {
    let xn = powers(x, n)?;
    let q = m.quotient_by(&xn)?;
    let images = chain.iter().map(|s| s.sum(q.relations())).collect::<Result<_>>()?;
    Ok((q, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn primary_decomposition_of_two_planes() {
        let r = Ring::new(&["x1", "x2", "x3", "x4"], FieldSpec::Rational).unwrap();
        let gens: Vec<Monomial> = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]].iter().map(|e| r.monomial(e)).collect();
        let dec = monomial_primary_decomposition(&r, &gens);
        let primes: Vec<Vec<usize>> = dec.components.iter().map(|c| c.prime.clone()).collect();
        assert_eq!(primes, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn embedded_components_are_kept() {
        let r = Ring::new(&["x", "y"], FieldSpec::Rational).unwrap();
        // (x^2, xy) = (x) ∩ (x^2, y)
        let dec = monomial_primary_decomposition(&r, &[r.monomial(&[2, 0]), r.monomial(&[1, 1])]);
        let shown: Vec<Vec<String>> = dec.components.iter().map(|c| c.display.clone()).collect();
        assert_eq!(shown, vec![vec!["x".to_string()], vec!["y".to_string(), "x^2".to_string()]]);
    }

    #[test]
    fn coefficients_for_k_one_are_all_one() {
        assert_eq!(theorem15_coefficients(&[0, 2, 3], 1).unwrap(), vec![1, 1]);
        assert_eq!(theorem15_coefficients(&[0, 1, 4, 6], 1).unwrap(), vec![1, 1, 1]);
        assert_eq!(theorem15_coefficients(&[0, 3], 2).unwrap(), vec![2]);
        assert!(theorem15_coefficients(&[2, 2], 1).is_err());
    }
}
