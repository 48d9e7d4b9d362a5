//! Gröbner bases of submodules of graded free modules.
//!
//! A [`FreeModule`] is `R^r` with a degree shift per basis vector and a
//! module term order. Vectors are sparse lists of `(position, monomial,
//! coefficient)` terms kept in descending order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Polynomial;
use crate::ring::{ModuleOrderKind, Monomial, MonomialOrder, Ring, revlex};

mod buchberger;
pub mod monomial;
mod submodule;
mod syzygy;

pub use buchberger::{GroebnerBasis, groebner_basis, reduce};
pub use monomial::{HilbertNumerator, MonomialModule};
pub use submodule::Submodule;
pub use syzygy::{TaggedBasis, syzygies};

/// A graded free module `R(-a_1) + ... + R(-a_r)` with a term order.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: Ring,
    shifts: Arc<[i64]>,
    kind: ModuleOrderKind,
    /// Positions below `split` dominate every position at or above it.
    split: Option<usize>,
}

impl FreeModule {
    /// A free module with the ring's default module order.
    pub fn new(ring: &Ring, shifts: Vec<i64>) -> FreeModule {
        FreeModule { ring: ring.clone(), shifts: shifts.into(), kind: ring.module_order(), split: None }
    }

    /// The free module of rank `r` generated in degree 0.
    pub fn standard(ring: &Ring, r: usize) -> FreeModule {
        FreeModule::new(ring, vec![0; r])
    }

    pub fn with_kind(&self, kind: ModuleOrderKind) -> FreeModule {
        FreeModule { kind, ..self.clone() }
    }

    /// Block order in which the first `split` positions are eliminated first.
    pub fn with_split(&self, split: usize) -> FreeModule {
        FreeModule { split: Some(split), ..self.clone() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn kind(&self) -> ModuleOrderKind {
        self.kind
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    /// Degree of the term `m e_pos`.
    pub fn term_degree(&self, pos: usize, m: &Monomial) -> i64 {
        m.degree() as i64 + self.shifts[pos]
    }

    pub fn cmp_terms(&self, p1: usize, m1: &Monomial, p2: usize, m2: &Monomial) -> Ordering {
        if let Some(s) = self.split {
            match (p1 < s, p2 < s) {
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                _ => {}
            }
        }
        let order = self.ring.order();
        match self.kind {
            ModuleOrderKind::PositionOverTerm => p2.cmp(&p1).then_with(|| order.cmp(m1, m2)),
            ModuleOrderKind::TermOverPosition => {
                let mono = match order {
                    MonomialOrder::DegRevLex => self
                        .term_degree(p1, m1)
                        .cmp(&self.term_degree(p2, m2))
                        .then_with(|| revlex(m1, m2)),
                    MonomialOrder::Lex => order.cmp(m1, m2),
                };
                mono.then_with(|| p2.cmp(&p1))
            }
        }
    }

    fn check(&self, v: &Vector) {
        debug_assert!(v.terms.iter().all(|t| t.pos < self.rank()));
    }

    /// Direct sum `self + other`, with `other`'s positions placed after
    /// `self`'s.
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let shifts: Vec<i64> = self.shifts.iter().chain(other.shifts.iter()).copied().collect();
        FreeModule { ring: self.ring.clone(), shifts: shifts.into(), kind: self.kind, split: None }
    }

    /// Same module with all shifts increased by `d`.
    pub fn twist(&self, d: i64) -> FreeModule {
        let shifts: Vec<i64> = self.shifts.iter().map(|s| s + d).collect();
        FreeModule { shifts: shifts.into(), ..self.clone() }
    }
}

impl fmt::Debug for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^{}{:?}", self.ring, self.rank(), self.shifts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// An element of a free module. The owning [`FreeModule`] is passed to every
/// operation that depends on the term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    /// The basis vector `e_pos`.
    pub fn unit(space: &FreeModule, pos: usize) -> Vector {
        let ring = &space.ring;
        Vector { terms: vec![Term { pos, mono: ring.one_monomial(), coeff: ring.field().one() }] }
    }

    pub fn from_terms(space: &FreeModule, mut terms: Vec<Term>) -> Vector {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| space.cmp_terms(b.pos, &b.mono, a.pos, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => {
                    l.coeff = l.coeff.add(&t.coeff);
                    if l.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Vector { terms: out }
    }

    /// The vector with the given coordinates.
    pub fn from_components(space: &FreeModule, comps: &[Polynomial]) -> Result<Vector> {
        if comps.len() != space.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                space.rank(),
                comps.len()
            )));
        }
        let mut terms = Vec::new();
        for (pos, f) in comps.iter().enumerate() {
            if !f.ring().same(&space.ring) {
                return Err(Error::RingMismatch(format!("{:?} vs {:?}", f.ring(), space.ring)));
            }
            for (m, c) in f.terms() {
                terms.push(Term { pos, mono: m.clone(), coeff: c.clone() });
            }
        }
        Ok(Vector::from_terms(space, terms))
    }

    /// `f e_pos`.
    pub fn from_poly(space: &FreeModule, pos: usize, f: &Polynomial) -> Vector {
        let terms = f.terms().iter().map(|(m, c)| Term { pos, mono: m.clone(), coeff: c.clone() }).collect();
        Vector::from_terms(space, terms)
    }

    pub fn components(&self, space: &FreeModule) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); space.rank()];
        for t in &self.terms {
            parts[t.pos].push((t.mono.clone(), t.coeff.clone()));
        }
        parts.into_iter().map(|p| Polynomial::from_terms(&space.ring, p)).collect()
    }

    pub fn component(&self, space: &FreeModule, pos: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.pos == pos).map(|t| (t.mono.clone(), t.coeff.clone())).collect();
        Polynomial::from_terms(&space.ring, terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree of the vector when all of its terms share one degree.
    pub fn homogeneous_degree(&self, space: &FreeModule) -> Option<i64> {
        let first = self.terms.first()?;
        let d = space.term_degree(first.pos, &first.mono);
        self.terms.iter().all(|t| space.term_degree(t.pos, &t.mono) == d).then_some(d)
    }

    pub fn is_homogeneous(&self, space: &FreeModule) -> bool {
        self.is_zero() || self.homogeneous_degree(space).is_some()
    }

    /// Largest degree of a term.
    pub fn top_degree(&self, space: &FreeModule) -> Option<i64> {
        self.terms.iter().map(|t| space.term_degree(t.pos, &t.mono)).max()
    }

    pub fn neg(&self) -> Vector {
        Vector {
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff.neg(), ..t.clone() }).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff.mul(c), ..t.clone() }).collect(),
        }
    }

    /// `c * m * self`; multiplying by a term preserves the order.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) })
                .collect(),
        }
    }

    pub fn mul_poly(&self, space: &FreeModule, f: &Polynomial) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in f.terms() {
            acc = acc.add(space, &self.mul_term(c, m));
        }
        acc
    }

    pub fn add(&self, space: &FreeModule, other: &Vector) -> Vector {
        self.merge(space, other, None)
    }

    pub fn sub(&self, space: &FreeModule, other: &Vector) -> Vector {
        self.merge(space, other, Some((&space.ring.field().one().neg(), &space.ring.one_monomial())))
    }

    /// `self - c * m * g`.
    pub fn sub_mul(&self, space: &FreeModule, c: &Scalar, m: &Monomial, g: &Vector) -> Vector {
        self.merge(space, g, Some((&c.neg(), m)))
    }

    /// `self + c * m * other` in one pass; `None` means `c = 1, m = 1`.
    fn merge(&self, space: &FreeModule, other: &Vector, factor: Option<(&Scalar, &Monomial)>) -> Vector {
        space.check(self);
        let scaled = |t: &Term| match factor {
            None => t.clone(),
            Some((c, m)) => Term { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) },
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = other.terms.first().map(scaled);
        while i < self.terms.len() || pending.is_some() {
            let ord = match (self.terms.get(i), pending.as_ref()) {
                (Some(a), Some(b)) => space.cmp_terms(a.pos, &a.mono, b.pos, &b.mono),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().expect("pending term"));
                    j += 1;
                    pending = other.terms.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let b = pending.take().expect("pending term");
                    let c = self.terms[i].coeff.add(&b.coeff);
                    if !c.is_zero() {
                        out.push(Term { coeff: c, ..b });
                    }
                    i += 1;
                    j += 1;
                    pending = other.terms.get(j).map(scaled);
                }
            }
        }
        Vector { terms: out }
    }

    /// Moves the vector into `target`, sending position `p` to `map(p)` and
    /// dropping terms mapped to `None`.
    pub fn remap(&self, target: &FreeModule, map: impl Fn(usize) -> Option<usize>) -> Vector {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| map(t.pos).map(|pos| Term { pos, mono: t.mono.clone(), coeff: t.coeff.clone() }))
            .collect();
        Vector::from_terms(target, terms)
    }

    pub fn make_monic(&self) -> Vector {
        match self.lead() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inv()),
            _ => self.clone(),
        }
    }

    pub fn display(&self, space: &FreeModule) -> String {
        let parts: Vec<String> = self.components(space).iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}
