//! Finitely presented graded modules and operations on their submodules.
//!
//! A module is `M = F / K` for a graded free module `F` and a homogeneous
//! submodule `K`. A submodule `N` of `M` is stored as its preimage in `F`,
//! which always contains `K`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{FreeModule, HilbertNumerator, Submodule, TaggedBasis, Vector};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Length of a module, which may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    /// The finite value, or an [`Error::InfiniteLength`] naming `what`.
    pub fn require(self, what: &str) -> Result<u64> {
        self.finite().ok_or_else(|| Error::InfiniteLength(what.to_string()))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

/// A finitely presented graded module `F / K`.
#[derive(Clone, Debug)]
pub struct FPModule {
    space: FreeModule,
    relations: Submodule,
    /// Images of the cover's basis vectors in `R` when the module is an
    /// ideal, used to print elements as polynomials.
    embedding: Option<Vec<Polynomial>>,
}

fn check_homogeneous(space: &FreeModule, vs: &[Vector]) -> Result<()> {
    for v in vs {
        if !v.is_homogeneous(space) {
            return Err(Error::Inhomogeneous(v.display(space)));
        }
    }
    Ok(())
}

/// Fails unless every element is homogeneous of positive degree.
pub fn check_sequence(ring: &Ring, seq: &[Polynomial]) -> Result<()> {
    for y in seq {
        if !y.ring().same(ring) {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", y.ring(), ring)));
        }
        match y.homogeneous_degree() {
            Some(d) if d > 0 => {}
            Some(_) => return Err(Error::Precondition(format!("`{y}` is a unit, not in the maximal ideal"))),
            None if y.is_zero() => {}
            None => return Err(Error::Inhomogeneous(y.to_string())),
        }
    }
    Ok(())
}

impl FPModule {
    /// `F / <relations>`; every relation must be homogeneous.
    pub fn new(space: &FreeModule, relations: Vec<Vector>) -> Result<FPModule> {
        check_homogeneous(space, &relations)?;
        Ok(FPModule { space: space.clone(), relations: Submodule::new(space, relations), embedding: None })
    }

    pub(crate) fn from_parts(relations: Submodule) -> FPModule {
        FPModule { space: relations.space().clone(), relations, embedding: None }
    }

    /// A quotient of `self` on the same cover, keeping the embedding.
    fn with_relations(&self, relations: Submodule) -> FPModule {
        FPModule { space: self.space.clone(), relations, embedding: self.embedding.clone() }
    }

    pub fn free(ring: &Ring, shifts: Vec<i64>) -> FPModule {
        let space = FreeModule::new(ring, shifts);
        FPModule { relations: Submodule::zero(&space), space, embedding: None }
    }

    /// The cyclic module `R / I`.
    pub fn quotient_ring(ring: &Ring, ideal: &[Polynomial]) -> Result<FPModule> {
        let space = FreeModule::standard(ring, 1);
        let rels = ideal.iter().map(|f| Vector::from_poly(&space, 0, f)).collect();
        FPModule::new(&space, rels)
    }

    /// The ideal `(g_1, ..., g_m)` as a module, presented by the syzygies of
    /// its generators.
    pub fn ideal_as_module(ring: &Ring, gens: &[Polynomial]) -> Result<FPModule> {
        let r1 = FreeModule::standard(ring, 1);
        let vs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(&r1, 0, g)).collect();
        check_homogeneous(&r1, &vs)?;
        let t = TaggedBasis::new(&r1, &vs)?;
        let mut m = FPModule::new(t.syzygy_space(), t.syzygies())?;
        m.embedding = Some(gens.to_vec());
        Ok(m)
    }

    pub fn embedding(&self) -> Option<&[Polynomial]> {
        self.embedding.as_deref()
    }

    /// Prints a submodule (given by its preimage): as an ideal when the
    /// module is embedded in `R`, otherwise by the reduced Gröbner basis
    /// elements that are nonzero in `M`.
    pub fn render_submodule(&self, n: &Submodule) -> Result<Vec<String>> {
        if let Some(emb) = &self.embedding {
            let r1 = FreeModule::standard(self.ring(), 1);
            let imgs: Vec<Vector> = n
                .gens()
                .iter()
                .map(|v| {
                    let f = v.components(&self.space).iter().zip(emb).fold(Polynomial::zero(self.ring()), |acc, (c, g)| acc.add(&c.mul(g)));
                    Vector::from_poly(&r1, 0, &f)
                })
                .collect();
            let ideal = Submodule::new(&r1, imgs);
            return Ok(ideal.gb()?.elements().iter().map(|v| v.component(&r1, 0).to_string()).collect());
        }
        let rel = self.relations.gb()?;
        Ok(n.gb()?.elements().iter().filter(|v| !rel.contains(v)).map(|v| v.display(&self.space)).collect())
    }

    pub fn ring(&self) -> &Ring {
        self.space.ring()
    }

    pub fn space(&self) -> &FreeModule {
        &self.space
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    /// The whole module, as a submodule of itself.
    pub fn whole(&self) -> Submodule {
        Submodule::full(&self.space)
    }

    pub fn is_zero(&self) -> Result<bool> {
        let gb = self.relations.gb()?;
        Ok((0..self.space.rank()).all(|p| gb.contains(&Vector::unit(&self.space, p))))
    }

    pub fn hilbert_numerator(&self) -> Result<HilbertNumerator> {
        Ok(self.relations.leading_module()?.hilbert_numerator())
    }

    pub fn length(&self) -> Result<Length> {
        Ok(match self.relations.leading_module()?.colength() {
            Some(n) => Length::Finite(n),
            None => Length::Infinite,
        })
    }

    /// Krull dimension; `None` for the zero module.
    pub fn krull_dim(&self) -> Result<Option<usize>> {
        Ok(self.relations.leading_module()?.dimension())
    }

    /// Preimage of the submodule of `M` generated by the images of `gens`.
    pub fn submodule(&self, gens: &[Vector]) -> Submodule {
        let mut all = gens.to_vec();
        all.extend(self.relations.gens().iter().cloned());
        Submodule::new(&self.space, all)
    }

    /// Preimage of `(y_1, ..., y_s) M`.
    pub fn ideal_times(&self, seq: &[Polynomial]) -> Submodule {
        let mut gens = Vec::new();
        for y in seq {
            for p in 0..self.space.rank() {
                gens.push(Vector::from_poly(&self.space, p, y));
            }
        }
        self.submodule(&gens)
    }

    /// `M / (y_1, ..., y_s) M`.
    pub fn quotient_by(&self, seq: &[Polynomial]) -> Result<FPModule> {
        check_sequence(self.ring(), seq)?;
        Ok(self.with_relations(self.ideal_times(seq)))
    }

    /// `M / N` for a submodule `N` given by its preimage.
    pub fn quotient_by_submodule(&self, n: &Submodule) -> FPModule {
        self.with_relations(n.clone())
    }

    /// Preimage of `H^0_m(M)` together with the exponent at which the
    /// per-variable saturations stabilized.
    pub fn h0(&self) -> Result<(Submodule, u32)> {
        m_saturate(&self.relations)
    }

    /// Length of the zeroth local cohomology `H^0_m(M)`.
    pub fn h0_length(&self) -> Result<u64> {
        let (sat, _) = self.h0()?;
        length_between(&sat, &self.relations)?.require("zeroth local cohomology")
    }

    /// `Ann_R(M)` as an ideal.
    pub fn annihilator(&self) -> Result<Submodule> {
        let r1 = FreeModule::standard(self.ring(), 1);
        let mut acc: Option<Submodule> = None;
        for p in 0..self.space.rank() {
            let src = FreeModule::new(self.ring(), vec![self.space.shifts()[p]]);
            let col = preimage(&src, &[Vector::unit(&self.space, p)], &self.relations)?;
            let as_ideal = Submodule::new(&r1, col.gens().iter().map(|v| v.remap(&r1, Some)).collect());
            acc = Some(match acc {
                None => as_ideal,
                Some(a) => intersect(&a, &as_ideal)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Submodule::full(&r1)))
    }

    /// True when `y` is a system of parameters: as many elements as the
    /// dimension, with `M / (y) M` of finite length.
    pub fn is_system_of_parameters(&self, seq: &[Polynomial]) -> Result<bool> {
        check_sequence(self.ring(), seq)?;
        let dim = self.krull_dim()?.unwrap_or(0);
        if seq.len() != dim {
            return Ok(false);
        }
        Ok(self.quotient_by(seq)?.length()?.is_finite())
    }

    /// Readable presentation, one relation per line.
    pub fn describe(&self) -> String {
        let rels: Vec<String> = self.relations.gens().iter().map(|v| v.display(&self.space)).collect();
        format!("{:?} / <{}>", self.space, rels.join(", "))
    }
}

/// Hilbert series numerator of `F / L`.
pub fn quotient_numerator(l: &Submodule) -> Result<HilbertNumerator> {
    Ok(l.leading_module()?.hilbert_numerator())
}

/// `length(N / L)` for `L` contained in `N`, read off Hilbert series.
pub fn length_between(n: &Submodule, l: &Submodule) -> Result<Length> {
    let diff = quotient_numerator(l)?.sub(&quotient_numerator(n)?);
    Ok(numerator_length(&diff, n.space().ring()))
}

/// Length of a graded module from the numerator of its Hilbert series.
pub fn numerator_length(num: &HilbertNumerator, ring: &Ring) -> Length {
    match num.divide_by_denominator(ring.weights()) {
        Some(q) => Length::Finite(u64::try_from(q.at_one()).expect("lengths are nonnegative")),
        None => Length::Infinite,
    }
}

/// `{ c in source : sum c_i images_i in target }`.
///
/// Each `images_i` must be homogeneous of degree `source.shifts()[i]` (or
/// zero).
pub fn preimage(source: &FreeModule, images: &[Vector], target: &Submodule) -> Result<Submodule> {
    assert_eq!(source.rank(), images.len());
    let n = images.len();
    let space = target.space();
    let mut gens = images.to_vec();
    let mut shifts = source.shifts().to_vec();
    for t in target.gens() {
        shifts.push(t.top_degree(space).unwrap_or(0));
        gens.push(t.clone());
    }
    let tb = TaggedBasis::with_tag_shifts(space, &gens, shifts)?;
    let proj: Vec<Vector> = tb
        .syzygies()
        .iter()
        .map(|s| s.remap(source, |p| (p < n).then_some(p)))
        .filter(|v| !v.is_zero())
        .collect();
    Ok(Submodule::new(source, proj))
}

/// `(L : f) = { v : f v in L }`.
pub fn colon(l: &Submodule, f: &Polynomial) -> Result<Submodule> {
    let space = l.space();
    let d = f.homogeneous_degree().map(i64::from).unwrap_or(0);
    let images: Vec<Vector> = (0..space.rank()).map(|p| Vector::from_poly(space, p, f)).collect();
    let src = space.twist(d);
    let pre = preimage(&src, &images, l)?;
    Ok(Submodule::new(space, pre.gens().to_vec()))
}

/// `A ∩ B` for submodules of one free module.
pub fn intersect(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    let space = a.space();
    if a.gens().is_empty() || b.gens().is_empty() {
        return Ok(Submodule::zero(space));
    }
    let shifts: Vec<i64> = a.gens().iter().map(|g| g.top_degree(space).unwrap_or(0)).collect();
    let src = FreeModule::new(space.ring(), shifts).with_kind(space.kind());
    let pre = preimage(&src, a.gens(), b)?;
    let elems = pre
        .gens()
        .iter()
        .map(|c| {
            c.components(&src)
                .iter()
                .zip(a.gens())
                .fold(Vector::zero(), |acc, (ci, g)| acc.add(space, &g.mul_poly(space, ci)))
        })
        .filter(|v| !v.is_zero())
        .collect();
    Ok(Submodule::new(space, elems))
}

const SATURATION_CAP: u32 = 256;

/// `(L : f^∞)` with the least `n` such that it equals `(L : f^n)`.
pub fn saturate(l: &Submodule, f: &Polynomial) -> Result<(Submodule, u32)> {
    let mut cur = l.clone();
    for n in 0..SATURATION_CAP {
        let next = colon(&cur, f)?;
        if next.equals(&cur)? {
            return Ok((cur, n));
        }
        cur = next;
    }
    Err(Error::Resource(format!("saturation by `{f}` did not stabilize within {SATURATION_CAP} steps")))
}

/// `(L : m^∞)`, the intersection of the saturations by each variable, and
/// the largest per-variable stabilization exponent.
pub fn m_saturate(l: &Submodule) -> Result<(Submodule, u32)> {
    let ring = l.space().ring().clone();
    let mut acc: Option<Submodule> = None;
    let mut exponent = 0;
    for i in 0..ring.nvars() {
        let (s, n) = saturate(l, &Polynomial::var(&ring, i))?;
        exponent = exponent.max(n);
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    Ok((acc.expect("at least one variable"), exponent))
}

/// Presentation of `N / L` for `L` contained in `N`.
pub fn present_subquotient(n: &Submodule, l: &Submodule) -> Result<FPModule> {
    Ok(present_image(n.gens(), l)?.0)
}

/// Presentation of `(<gens> + L) / L`, together with the generators it is
/// presented on (normal forms modulo `L`, zeros dropped).
pub fn present_image(gens: &[Vector], l: &Submodule) -> Result<(FPModule, Vec<Vector>)> {
    let space = l.space();
    let gb = l.gb()?;
    let mut kept: Vec<Vector> = Vec::new();
    for g in gens {
        let r = gb.reduce(g);
        if !r.is_zero() && !kept.contains(&r) {
            kept.push(r);
        }
    }
    let shifts: Vec<i64> = kept.iter().map(|g| g.top_degree(space).unwrap_or(0)).collect();
    let src = FreeModule::new(space.ring(), shifts).with_kind(space.kind());
    let kernel = preimage(&src, &kept, l)?;
    Ok((FPModule::from_parts(kernel), kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names, FieldSpec::Rational).unwrap()
    }

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| Polynomial::parse(r, x).unwrap()).collect()
    }

    #[test]
    fn lengths_of_artinian_quotients() {
        let r = ring(&["X", "Y"]);
        let m = FPModule::quotient_ring(&r, &polys(&r, &["X^2", "X*Y", "Y^2"])).unwrap();
        assert_eq!(m.length().unwrap(), Length::Finite(3));
        assert_eq!(m.krull_dim().unwrap(), Some(0));
        let line = FPModule::quotient_ring(&r, &polys(&r, &["X"])).unwrap();
        assert_eq!(line.length().unwrap(), Length::Infinite);
        assert_eq!(line.krull_dim().unwrap(), Some(1));
        let zero = FPModule::quotient_ring(&r, &polys(&r, &["X + Y^2"]));
        assert!(matches!(zero, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn colon_and_saturation() {
        let r = ring(&["x", "y"]);
        let f1 = FreeModule::standard(&r, 1);
        let i = Submodule::new(&f1, polys(&r, &["x^2*y", "x*y^2"]).iter().map(|p| Vector::from_poly(&f1, 0, p)).collect());
        let c = colon(&i, &polys(&r, &["x"])[0]).unwrap();
        // (x^2 y, x y^2) : x = (x y, y^2)
        let expect = Submodule::new(&f1, polys(&r, &["x*y", "y^2"]).iter().map(|p| Vector::from_poly(&f1, 0, p)).collect());
        assert!(c.equals(&expect).unwrap());
        let (s, n) = saturate(&i, &polys(&r, &["x"])[0]).unwrap();
        let y = Submodule::new(&f1, vec![Vector::from_poly(&f1, 0, &polys(&r, &["y"])[0])]);
        assert!(s.equals(&y).unwrap());
        assert_eq!(n, 2);
    }

    #[test]
    fn h0_of_an_embedded_component() {
        // (x^2, xy) = (x) ∩ (x^2, y); H^0_m(R/I) = (x)/I has length 1.
        let r = ring(&["x", "y"]);
        let m = FPModule::quotient_ring(&r, &polys(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(m.h0_length().unwrap(), 1);
        let ann = m.annihilator().unwrap();
        assert_eq!(ann.gb().unwrap().len(), 2);
        let cm = FPModule::quotient_ring(&r, &polys(&r, &["x*y"])).unwrap();
        assert_eq!(cm.h0_length().unwrap(), 0);
    }

    #[test]
    fn ideal_presentation_matches_hilbert_series() {
        // m^2 in k[X,Y]: the module m^2 has the Hilbert series of R minus R/m^2.
        let r = ring(&["X", "Y"]);
        let m2 = FPModule::ideal_as_module(&r, &polys(&r, &["X^2", "X*Y", "Y^2"])).unwrap();
        let quotient = FPModule::quotient_ring(&r, &polys(&r, &["X^2", "X*Y", "Y^2"])).unwrap();
        let whole = FPModule::free(&r, vec![0]);
        let expect = whole.hilbert_numerator().unwrap().sub(&quotient.hilbert_numerator().unwrap());
        assert_eq!(m2.hilbert_numerator().unwrap(), expect);
        assert_eq!(m2.krull_dim().unwrap(), Some(2));
    }

    #[test]
    fn intersection_of_ideals() {
        let r = ring(&["x", "y", "z"]);
        let f1 = FreeModule::standard(&r, 1);
        let id = |s: &[&str]| Submodule::new(&f1, polys(&r, s).iter().map(|p| Vector::from_poly(&f1, 0, p)).collect());
        let a = intersect(&id(&["x", "y"]), &id(&["z"])).unwrap();
        assert!(a.equals(&id(&["x*z", "y*z"])).unwrap());
    }

    #[test]
    fn subquotient_presentation() {
        // (x)/(x^2, xy) in k[x,y] is k(-1).
        let r = ring(&["x", "y"]);
        let f1 = FreeModule::standard(&r, 1);
        let v = |s: &str| Vector::from_poly(&f1, 0, &Polynomial::parse(&r, s).unwrap());
        let n = Submodule::new(&f1, vec![v("x"), v("x^2"), v("x*y")]);
        let l = Submodule::new(&f1, vec![v("x^2"), v("x*y")]);
        let q = present_subquotient(&n, &l).unwrap();
        assert_eq!(q.length().unwrap(), Length::Finite(1));
        assert_eq!(length_between(&n, &l).unwrap(), Length::Finite(1));
        assert_eq!(q.hilbert_numerator().unwrap(), HilbertNumerator::monomial(1, 1).mul(&HilbertNumerator::monomial(0, 1).sub(&HilbertNumerator::monomial(1, 1))).mul(&HilbertNumerator::monomial(0, 1).sub(&HilbertNumerator::monomial(1, 1))));
    }
}
