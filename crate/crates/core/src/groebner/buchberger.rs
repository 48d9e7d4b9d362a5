use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::Monomial;

use super::{FreeModule, Term, Vector};

/// A reduced Gröbner basis: monic, minimal, tail-reduced, sorted by
/// descending leading term. Two submodules of the same free module are equal
/// exactly when their reduced bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    space: FreeModule,
    elems: Vec<Vector>,
}

impl GroebnerBasis {
    pub fn space(&self) -> &FreeModule {
        &self.space
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Normal form of `v` modulo the basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        reduce(&self.space, v, &self.elems)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Leading `(position, monomial)` pairs.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|g| {
            let t = g.lead().expect("nonzero basis element");
            (t.pos, t.mono.clone())
        }).collect()
    }
}

fn mask(m: &Monomial) -> u64 {
    m.exponents().iter().enumerate().fold(0, |acc, (i, &e)| if e > 0 { acc | 1 << (i % 64) } else { acc })
}

struct Lead {
    pos: usize,
    mono: Monomial,
    mask: u64,
}

impl Lead {
    fn of(v: &Vector) -> Lead {
        let t = v.lead().expect("nonzero");
        Lead { pos: t.pos, mono: t.mono.clone(), mask: mask(&t.mono) }
    }

    fn divides(&self, t: &Term, tmask: u64) -> bool {
        self.pos == t.pos && self.mask & !tmask == 0 && self.mono.divides(&t.mono)
    }
}

/// Full normal form of `v` with respect to `reducers` (any order; each
/// reducer must be nonzero).
pub fn reduce(space: &FreeModule, v: &Vector, reducers: &[Vector]) -> Vector {
    let leads: Vec<Lead> = reducers.iter().map(Lead::of).collect();
    let idx: Vec<usize> = (0..reducers.len()).collect();
    full_reduce(space, v.clone(), reducers, &leads, &idx)
}

fn find_reducer(t: &Term, leads: &[Lead], candidates: &[usize]) -> Option<usize> {
    let tm = mask(&t.mono);
    candidates.iter().copied().find(|&i| leads[i].divides(t, tm))
}

fn full_reduce(space: &FreeModule, mut f: Vector, basis: &[Vector], leads: &[Lead], cand: &[usize]) -> Vector {
    let mut done: Vec<Term> = Vec::new();
    loop {
        let Some(t) = f.terms.first().cloned() else { break };
        match find_reducer(&t, leads, cand) {
            Some(i) => {
                let g = &basis[i];
                let gl = g.lead().expect("nonzero");
                let c = t.coeff.div(&gl.coeff);
                let m = t.mono.div(&gl.mono).expect("divisible");
                f = f.sub_mul(space, &c, &m, g);
            }
            None => {
                done.push(t);
                f.terms.remove(0);
            }
        }
    }
    done.extend(f.terms);
    Vector { terms: done }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    Generator(usize),
    Pair(usize, usize),
}

/// Computes the reduced Gröbner basis of the submodule generated by `gens`.
///
/// Uses the normal selection strategy with sugar tie-breaking and the
/// Gebauer–Möller criteria. The product criterion is applied only in rank
/// one. The ring's [`Limits`](crate::ring::Limits) bound the work done.
pub fn groebner_basis(space: &FreeModule, gens: &[Vector]) -> Result<GroebnerBasis> {
    let limits = space.ring().limits();
    let weights = space.ring().weights().to_vec();
    let mut queue: BTreeMap<(i64, i64, Item), Option<Monomial>> = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        if let Some(d) = g.top_degree(space) {
            queue.insert((d, d, Item::Generator(k)), None);
        }
    }
    let mut basis: Vec<Vector> = Vec::new();
    let mut leads: Vec<Lead> = Vec::new();
    let mut sugar: Vec<i64> = Vec::new();
    let mut alive: Vec<usize> = Vec::new();
    let product_ok = space.rank() == 1;
    let mut processed = 0usize;

    while let Some(((deg, sug, item), _)) = queue.pop_first() {
        processed += 1;
        if processed > limits.pair_budget {
            return Err(Error::Resource(format!(
                "Gröbner basis exceeded the budget of {} pairs",
                limits.pair_budget
            )));
        }
        if let Some(cap) = limits.degree_cap {
            if deg > cap {
                return Err(Error::Resource(format!("Gröbner basis reached degree {deg} above the cap {cap}")));
            }
        }
        let s = match item {
            Item::Generator(k) => gens[k].clone(),
            Item::Pair(i, j) => spoly(space, &basis[i], &basis[j]),
        };
        let h = full_reduce(space, s, &basis, &leads, &alive).make_monic();
        if h.is_zero() {
            continue;
        }
        let hl = Lead::of(&h);
        let hidx = basis.len();

        // Drop queued pairs made redundant by the new leading term.
        queue.retain(|(_, _, it), lcm| match (it, lcm) {
            (Item::Pair(i, j), Some(l)) => {
                let (li, lj) = (&leads[*i], &leads[*j]);
                !(li.pos == hl.pos
                    && hl.mono.divides(l)
                    && li.mono.lcm(&hl.mono, &weights) != *l
                    && lj.mono.lcm(&hl.mono, &weights) != *l)
            }
            _ => true,
        });

        let mut cands: Vec<(Monomial, usize, bool)> = alive
            .iter()
            .filter(|&&i| leads[i].pos == hl.pos)
            .map(|&i| (leads[i].mono.lcm(&hl.mono, &weights), i, leads[i].mono.is_coprime(&hl.mono)))
            .collect();
        let all_lcms: Vec<Monomial> = cands.iter().map(|c| c.0.clone()).collect();
        cands.retain(|(l, _, _)| !all_lcms.iter().any(|o| o != l && o.divides(l)));
        cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut k = 0;
        while k < cands.len() {
            let mut e = k;
            while e < cands.len() && cands[e].0 == cands[k].0 {
                e += 1;
            }
            let coprime = product_ok && cands[k..e].iter().any(|c| c.2);
            if !coprime {
                let (l, i, _) = cands[k].clone();
                let d = space.term_degree(hl.pos, &l);
                let si = sugar[i] + (l.degree() - leads[i].mono.degree()) as i64;
                let sh = sug + (l.degree() - hl.mono.degree()) as i64;
                queue.insert((d, si.max(sh), Item::Pair(i, hidx)), Some(l));
            }
            k = e;
        }

        alive.retain(|&i| !(leads[i].pos == hl.pos && hl.mono.divides(&leads[i].mono)));
        alive.push(hidx);
        basis.push(h);
        leads.push(hl);
        sugar.push(sug.max(deg));
    }

    let elems = alive.iter().map(|&i| basis[i].clone()).collect();
    Ok(GroebnerBasis { space: space.clone(), elems: interreduce(space, elems) })
}

fn spoly(space: &FreeModule, f: &Vector, g: &Vector) -> Vector {
    let (a, b) = (f.lead().expect("nonzero"), g.lead().expect("nonzero"));
    let l = a.mono.lcm(&b.mono, space.ring().weights());
    let ma = l.div(&a.mono).expect("lcm");
    let mb = l.div(&b.mono).expect("lcm");
    let fa = f.mul_term(&b.coeff, &ma);
    fa.sub_mul(space, &a.coeff, &mb, g)
}

/// Minimalizes, tail-reduces, normalizes and sorts a Gröbner basis.
fn interreduce(space: &FreeModule, mut elems: Vec<Vector>) -> Vec<Vector> {
    elems.retain(|v| !v.is_zero());
    elems.sort_by(|a, b| {
        let (x, y) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        space.cmp_terms(x.pos, &x.mono, y.pos, &y.mono)
    });
    let mut minimal: Vec<Vector> = Vec::new();
    for v in elems {
        let t = v.lead().expect("nonzero");
        let redundant = minimal.iter().any(|m| {
            let l = m.lead().expect("nonzero");
            l.pos == t.pos && l.mono.divides(&t.mono)
        });
        if !redundant {
            minimal.push(v);
        }
    }
    let leads: Vec<Lead> = minimal.iter().map(Lead::of).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<usize> = (0..minimal.len()).filter(|&i| i != k).collect();
        let mut v = minimal[k].clone();
        let head = v.terms.remove(0);
        let tail = full_reduce(space, v, &minimal, &leads, &others);
        let mut terms = vec![head];
        terms.extend(tail.terms);
        out.push(Vector { terms }.make_monic());
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        space.cmp_terms(y.pos, &y.mono, x.pos, &x.mono)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::Polynomial;
    use crate::ring::{Limits, Ring};

    fn setup() -> (Ring, FreeModule) {
        let r = Ring::new(&["X", "Y"], FieldSpec::Rational).unwrap();
        let f = FreeModule::standard(&r, 1);
        (r, f)
    }

    fn ideal(r: &Ring, f: &FreeModule, gens: &[&str]) -> Vec<Vector> {
        gens.iter().map(|s| Vector::from_poly(f, 0, &Polynomial::parse(r, s).unwrap())).collect()
    }

    fn shown(f: &FreeModule, gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|v| v.component(f, 0).to_string()).collect()
    }

    #[test]
    fn reduced_basis_of_a_small_ideal() {
        let (r, f) = setup();
        let gb = groebner_basis(&f, &ideal(&r, &f, &["X^2 - Y^2", "X*Y"])).unwrap();
        assert_eq!(shown(&f, &gb), ["Y^3", "X^2 - Y^2", "X*Y"]);
    }

    #[test]
    fn normal_form_of_a_sum_of_squares() {
        let (r, f) = setup();
        let gb = groebner_basis(&f, &ideal(&r, &f, &["X^2 - Y^2"])).unwrap();
        let nf = gb.reduce(&ideal(&r, &f, &["X^2 + Y^2"])[0]);
        assert_eq!(nf.component(&f, 0).to_string(), "2*Y^2");
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        let (r, f) = setup();
        let gb = groebner_basis(&f, &ideal(&r, &f, &["X", "X + 1"])).unwrap();
        assert_eq!(shown(&f, &gb), ["1"]);
        assert!(groebner_basis(&f, &ideal(&r, &f, &["0"])).unwrap().is_empty());
    }

    #[test]
    fn tiny_budget_is_a_resource_error() {
        let r = Ring::new(&["X", "Y", "Z"], FieldSpec::Rational)
            .unwrap()
            .with_limits(Limits { pair_budget: 3, degree_cap: None });
        let f = FreeModule::standard(&r, 1);
        let gens = ideal(&r, &f, &["X^3 - Y*Z^2", "Y^3 - X*Z^2", "X^2*Y - Z^3"]);
        let err = groebner_basis(&f, &gens).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn module_basis_over_position() {
        let (r, _) = setup();
        let f2 = FreeModule::standard(&r, 2);
        let p = |s| Polynomial::parse(&r, s).unwrap();
        let gens = vec![
            Vector::from_components(&f2, &[p("X"), p("Y")]).unwrap(),
            Vector::from_components(&f2, &[p("Y"), p("X")]).unwrap(),
        ];
        let gb = groebner_basis(&f2, &gens).unwrap();
        for g in &gens {
            assert!(gb.contains(g));
        }
        // (X^2 - Y^2) e_2 lies in the submodule.
        let w = Vector::from_components(&f2, &[p("0"), p("X^2 - Y^2")]).unwrap();
        assert!(gb.contains(&w));
        let not = Vector::from_components(&f2, &[p("0"), p("X")]).unwrap();
        assert!(!gb.contains(&not));
    }
}
