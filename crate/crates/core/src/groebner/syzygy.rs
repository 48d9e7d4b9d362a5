use crate::error::Result;
use crate::poly::Polynomial;

use super::{FreeModule, GroebnerBasis, Term, Vector, groebner_basis};

/// Gröbner basis of the tagged generators `(g_i, e_i)` in `F + R^m` under a
/// block order that eliminates `F` first. It yields both the syzygies of the
/// `g_i` and the coefficients expressing members of `<g_i>` in terms of them.
#[derive(Clone, Debug)]
pub struct TaggedBasis {
    base: FreeModule,
    syz_space: FreeModule,
    gb: GroebnerBasis,
}

impl TaggedBasis {
    pub fn new(space: &FreeModule, gens: &[Vector]) -> Result<TaggedBasis> {
        let tag_shifts: Vec<i64> = gens.iter().map(|g| g.top_degree(space).unwrap_or(0)).collect();
        TaggedBasis::with_tag_shifts(space, gens, tag_shifts)
    }

    /// Like [`TaggedBasis::new`], with explicit degrees for the tags. They
    /// must agree with the generator degrees wherever a generator is nonzero.
    pub fn with_tag_shifts(space: &FreeModule, gens: &[Vector], tag_shifts: Vec<i64>) -> Result<TaggedBasis> {
        assert_eq!(gens.len(), tag_shifts.len());
        let r = space.rank();
        let syz_space = FreeModule::new(space.ring(), tag_shifts).with_kind(space.kind());
        let tagged = space.direct_sum(&syz_space).with_kind(space.kind()).with_split(r);
        let one = space.ring().field().one();
        let tagged_gens: Vec<Vector> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut terms: Vec<Term> = g.terms().to_vec();
                terms.push(Term { pos: r + i, mono: space.ring().one_monomial(), coeff: one.clone() });
                Vector::from_terms(&tagged, terms)
            })
            .collect();
        let gb = groebner_basis(&tagged, &tagged_gens)?;
        Ok(TaggedBasis { base: space.clone(), syz_space, gb })
    }

    /// The free module `R^m` whose basis vector `e_i` maps to `g_i`.
    pub fn syzygy_space(&self) -> &FreeModule {
        &self.syz_space
    }

    /// Reduced Gröbner basis of the syzygy module.
    pub fn syzygies(&self) -> Vec<Vector> {
        let r = self.base.rank();
        self.gb
            .elements()
            .iter()
            .filter(|g| g.lead().is_some_and(|t| t.pos >= r))
            .map(|g| g.remap(&self.syz_space, |p| p.checked_sub(r)))
            .collect()
    }

    /// Coefficients `c` with `f = sum c_i g_i`, or `None` when `f` is not in
    /// the span of the generators.
    pub fn lift(&self, f: &Vector) -> Option<Vec<Polynomial>> {
        let r = self.base.rank();
        let tagged = self.gb.space();
        let nf = self.gb.reduce(&f.remap(tagged, Some));
        if nf.terms().iter().any(|t| t.pos < r) {
            return None;
        }
        let coeffs = nf.neg().remap(&self.syz_space, |p| p.checked_sub(r));
        Some(coeffs.components(&self.syz_space))
    }
}

/// Generators of the syzygy module of `gens`, living in the returned free
/// module of rank `gens.len()`.
pub fn syzygies(space: &FreeModule, gens: &[Vector]) -> Result<(FreeModule, Vec<Vector>)> {
    let t = TaggedBasis::new(space, gens)?;
    let s = t.syzygies();
    Ok((t.syz_space, s))
}
