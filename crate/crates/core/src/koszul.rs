//! Koszul complexes of parameter sequences on finitely presented modules,
//! their homology, partial Euler–Poincaré characteristics and multiplicities.
//!
//! The term `K_k(y; M)` is realized as `F_k / K_k` with
//! `F_k = F^{binom(s,k)}`: the basis vector for the subset `I` and the cover
//! position `p` sits at position `rank(I) * r + p`, with degree
//! `shift_p + sum_{i in I} deg y_i`. The differential sends
//! `e_{i_1 < ... < i_k}` to `sum_j (-1)^(j+1) y_{i_j} e_{I \ i_j}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{FreeModule, HilbertNumerator, Submodule, Term, Vector};
use crate::module::{FPModule, Length, check_sequence, colon, numerator_length, present_image, preimage, quotient_numerator};
use crate::poly::Polynomial;

/// `binom(a, b)`, zero when `b < 0` or `a < b`.
pub fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
}

/// `x(n) = (x_1^{n_1}, ..., x_s^{n_s})`.
pub fn powers(x: &[Polynomial], n: &[u32]) -> Result<Vec<Polynomial>> {
    if x.len() != n.len() {
        return Err(Error::InvalidInput(format!("{} elements but {} exponents", x.len(), n.len())));
    }
    if n.contains(&0) {
        return Err(Error::InvalidInput("exponents must be positive".into()));
    }
    Ok(x.iter().zip(n).map(|(f, &e)| f.pow(e)).collect())
}

fn subsets(s: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            cur.push(i);
            go(i + 1, s, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, s, k, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex `K(y; M)`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    module: FPModule,
    seq: Vec<Polynomial>,
    subsets: Vec<Vec<Vec<usize>>>,
    spaces: Vec<FreeModule>,
    boundaries: Vec<Submodule>,
}

impl KoszulComplex {
    pub fn new(module: &FPModule, seq: &[Polynomial]) -> Result<KoszulComplex> {
        check_sequence(module.ring(), seq)?;
        let s = seq.len();
        let cover = module.space();
        let r = cover.rank();
        let degs: Vec<i64> = seq.iter().map(|y| y.homogeneous_degree().unwrap_or(0) as i64).collect();
        let subsets: Vec<Vec<Vec<usize>>> = (0..=s).map(|k| subsets(s, k)).collect();
        let spaces: Vec<FreeModule> = subsets
            .iter()
            .map(|sets| {
                let mut shifts = Vec::with_capacity(sets.len() * r);
                for set in sets {
                    let d: i64 = set.iter().map(|&i| degs[i]).sum();
                    shifts.extend(cover.shifts().iter().map(|sh| sh + d));
                }
                FreeModule::new(module.ring(), shifts).with_kind(cover.kind())
            })
            .collect();
        let mut cx = KoszulComplex { module: module.clone(), seq: seq.to_vec(), subsets, spaces, boundaries: Vec::new() };
        cx.boundaries = (0..=s)
            .map(|k| {
                let mut gens = cx.relation_gens(k);
                if k < s {
                    for idx in 0..cx.spaces[k + 1].rank() {
                        gens.push(cx.apply(k + 1, &Vector::unit(&cx.spaces[k + 1], idx)));
                    }
                }
                Submodule::new(&cx.spaces[k], gens)
            })
            .collect();
        Ok(cx)
    }

    /// The complex of `x(n)`.
    pub fn with_exponents(module: &FPModule, x: &[Polynomial], n: &[u32]) -> Result<KoszulComplex> {
        KoszulComplex::new(module, &powers(x, n)?)
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.seq
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    /// Number of sequence elements.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The free cover `F_k` of the `k`-th term.
    pub fn space(&self, k: usize) -> &FreeModule {
        &self.spaces[k]
    }

    fn index_of(&self, k: usize, set: &[usize]) -> usize {
        self.subsets[k].binary_search_by(|s| s.as_slice().cmp(set)).expect("subset of the right size")
    }

    /// `phi_k(v)` for `v` in `F_k`; zero for `k = 0`.
    pub fn apply(&self, k: usize, v: &Vector) -> Vector {
        if k == 0 {
            return Vector::zero();
        }
        let r = self.module.space().rank();
        let target = &self.spaces[k - 1];
        let mut terms = Vec::new();
        for t in v.terms() {
            let (set, p) = (&self.subsets[k][t.pos / r], t.pos % r);
            for (j, &i) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(j);
                let pos = self.index_of(k - 1, &rest) * r + p;
                let sign = if j % 2 == 0 { t.coeff.clone() } else { t.coeff.neg() };
                for (m, c) in self.seq[i].terms() {
                    terms.push(Term { pos, mono: t.mono.mul(m), coeff: sign.mul(c) });
                }
            }
        }
        Vector::from_terms(target, terms)
    }

    fn relation_gens(&self, k: usize) -> Vec<Vector> {
        let r = self.module.space().rank();
        let rels = self.module.relations().gens();
        let mut out = Vec::with_capacity(rels.len() * self.subsets[k].len());
        for b in 0..self.subsets[k].len() {
            for g in rels {
                out.push(g.remap(&self.spaces[k], |p| Some(b * r + p)));
            }
        }
        out
    }

    /// `K_k`, the relations of the `k`-th term.
    pub fn relations(&self, k: usize) -> Submodule {
        Submodule::new(&self.spaces[k], self.relation_gens(k))
    }

    /// `im(phi_{k+1}) + K_k`.
    pub fn boundaries(&self, k: usize) -> &Submodule {
        &self.boundaries[k]
    }

    /// `phi_k^{-1}(K_{k-1})`.
    pub fn cycles(&self, k: usize) -> Result<Submodule> {
        if k == 0 {
            return Ok(Submodule::full(&self.spaces[0]));
        }
        let images: Vec<Vector> =
            (0..self.spaces[k].rank()).map(|i| self.apply(k, &Vector::unit(&self.spaces[k], i))).collect();
        preimage(&self.spaces[k], &images, &self.relations(k - 1))
    }

    /// `H_k(y; M)` as a finitely presented module.
    pub fn homology(&self, k: usize) -> Result<FPModule> {
        if k > self.len() {
            return Ok(FPModule::free(self.module.ring(), Vec::new()));
        }
        Ok(present_image(self.cycles(k)?.gens(), &self.boundaries[k])?.0)
    }

    fn term_numerator(&self, m_num: &HilbertNumerator, k: usize) -> HilbertNumerator {
        let mut twist = HilbertNumerator::zero();
        for set in &self.subsets[k] {
            let d: i64 = set.iter().map(|&i| self.seq[i].homogeneous_degree().unwrap_or(0) as i64).sum();
            twist = twist.add(&HilbertNumerator::monomial(d, 1));
        }
        m_num.mul(&twist)
    }

    fn boundary_numerator(&self, m_num: &HilbertNumerator, k: usize) -> Result<HilbertNumerator> {
        if k == self.len() {
            return Ok(self.term_numerator(m_num, k));
        }
        quotient_numerator(&self.boundaries[k])
    }

    /// Hilbert series numerator of `H_k`, from the Hilbert series of the
    /// terms and of the boundary quotients.
    pub fn homology_numerator(&self, k: usize) -> Result<HilbertNumerator> {
        if k > self.len() {
            return Ok(HilbertNumerator::zero());
        }
        let m_num = self.module.hilbert_numerator()?;
        let mut h = self.boundary_numerator(&m_num, k)?;
        if k > 0 {
            h = h.sub(&self.term_numerator(&m_num, k - 1)).add(&self.boundary_numerator(&m_num, k - 1)?);
        }
        Ok(h)
    }

    pub fn homology_length(&self, k: usize) -> Result<Length> {
        Ok(numerator_length(&self.homology_numerator(k)?, self.module.ring()))
    }

    /// Lengths of all homology modules and the characteristics they determine.
    pub fn summary(&self) -> Result<KoszulSummary> {
        let lengths = (0..=self.len()).map(|k| self.homology_length(k)).collect::<Result<Vec<_>>>()?;
        Ok(KoszulSummary::from_lengths(lengths))
    }

    /// `chi_k = sum_{i >= k} (-1)^{i-k} length(H_i)`.
    pub fn chi(&self, k: usize) -> Result<u64> {
        let mut acc: i64 = 0;
        for i in (k..=self.len()).rev() {
            let l = self.homology_length(i)?.require(&format!("H_{i} of the Koszul complex"))?;
            acc = l as i64 - acc;
        }
        u64::try_from(acc).map_err(|_| Error::Precondition(format!("negative chi_{k}: not a system of parameters")))
    }
}

/// Homology lengths of one Koszul complex and the partial characteristics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulSummary {
    pub lengths: Vec<Length>,
    /// `chi[k]`, present when every `length(H_i)` with `i >= k` is finite.
    pub chi: Vec<Option<i64>>,
}

impl KoszulSummary {
    pub fn from_lengths(lengths: Vec<Length>) -> KoszulSummary {
        let mut chi = vec![None; lengths.len()];
        let mut acc = Some(0i64);
        for k in (0..lengths.len()).rev() {
            acc = match (acc, lengths[k]) {
                (Some(a), Length::Finite(l)) => Some(l as i64 - a),
                _ => None,
            };
            chi[k] = acc;
        }
        KoszulSummary { lengths, chi }
    }
}

/// `H_i(x(n); M)` as a finitely presented module.
pub fn koszul_homology(m: &FPModule, x: &[Polynomial], n: &[u32], i: usize) -> Result<FPModule> {
    KoszulComplex::with_exponents(m, x, n)?.homology(i)
}

/// `chi_k(x(n); M)`.
pub fn chi_k(m: &FPModule, x: &[Polynomial], n: &[u32], k: usize) -> Result<u64> {
    KoszulComplex::with_exponents(m, x, n)?.chi(k)
}

/// Serre multiplicity `e(y; N)`, computed as `chi_0`. For the empty
/// sequence it is `length(N)`.
pub fn multiplicity(y: &[Polynomial], n: &FPModule) -> Result<u64> {
    if y.is_empty() {
        return n.length()?.require("module with empty parameter sequence");
    }
    let cx = KoszulComplex::new(n, y)?;
    cx.homology_length(0)?.require("N/(y)N")?;
    match n.krull_dim()? {
        None => return Ok(0),
        Some(d) if d < y.len() => return Ok(0),
        _ => {}
    }
    cx.chi(0)
}

/// `chi_k(x(n); M)` through the sum over `i` of
/// `e(x_1..x_i; (0 : x_{i+1}) in H_{k-1}(x_{i+2}..x_d; M))`, for `k >= 1`.
pub fn chi_via_lemma21(m: &FPModule, x: &[Polynomial], n: &[u32], k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::Precondition("the colon-sum formula needs k >= 1".into()));
    }
    let xn = powers(x, n)?;
    let d = xn.len();
    if k > d {
        return Ok(0);
    }
    let mut total = 0u64;
    for i in 0..=d - k {
        let tail = &xn[i + 1..];
        if k - 1 > tail.len() {
            continue;
        }
        let h = KoszulComplex::new(m, tail)?.homology(k - 1)?;
        let col = colon(h.relations(), &xn[i])?;
        let (nmod, _) = present_image(col.gens(), h.relations())?;
        total += multiplicity(&xn[..i], &nmod)?;
    }
    Ok(total)
}

/// `length(H^0_m(M / (x_1^{n_1}, ..., x_t^{n_t}) M))`.
pub fn h0_of_quotient(m: &FPModule, xn: &[Polynomial], t: usize) -> Result<u64> {
    m.quotient_by(&xn[..t])?.h0_length()
}

/// `sum_{t=0}^{j-i} binom(j-t-1, i-1) length(H^0_m(M/(x_1^{n_1},...,x_t^{n_t})M))`,
/// which equals `length(H_i(x_1^{n_1},...,x_j^{n_j}; M))` for strong
/// d-sequences.
pub fn homology_length_lemma42(m: &FPModule, x: &[Polynomial], n: &[u32], i: usize, j: usize) -> Result<u64> {
    if i == 0 || i > j || j > x.len() {
        return Err(Error::Precondition(format!("need 0 < i <= j <= d, got i={i}, j={j}")));
    }
    let xn = powers(x, n)?;
    let mut total = 0i64;
    for t in 0..=j - i {
        let c = binom((j - t) as i64 - 1, i as i64 - 1);
        if c != 0 {
            total += c * h0_of_quotient(m, &xn, t)? as i64;
        }
    }
    Ok(total as u64)
}

/// `sum_{j=0}^{i} (-1)^{i-j} binom(d-j-1, d-i-1) length(H_{d-j}(x(n); M))`,
/// which equals `length(H^0_m(M/(x_1^{n_1},...,x_i^{n_i})M))` for
/// dd-sequences that are systems of parameters. Requires `i < d`.
pub fn h0_from_homology(m: &FPModule, x: &[Polynomial], n: &[u32], i: usize) -> Result<i64> {
    let d = x.len();
    if i >= d {
        return Err(Error::Precondition(format!("need i < d = {d}, got {i}")));
    }
    let cx = KoszulComplex::with_exponents(m, x, n)?;
    let mut total = 0i64;
    for j in 0..=i {
        let c = binom((d - j) as i64 - 1, (d - i) as i64 - 1);
        if c == 0 {
            continue;
        }
        let l = cx.homology_length(d - j)?.require("top Koszul homology")? as i64;
        let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
        total += sign * c * l;
    }
    Ok(total)
}
