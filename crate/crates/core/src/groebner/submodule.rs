use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::{FreeModule, GroebnerBasis, MonomialModule, Vector, groebner_basis};

/// A submodule of a free module given by generators. Its Gröbner basis is
/// computed on first use and cached.
#[derive(Clone, Debug)]
pub struct Submodule {
    space: FreeModule,
    gens: Vec<Vector>,
    gb: OnceLock<GroebnerBasis>,
}

impl Submodule {
    pub fn new(space: &FreeModule, gens: Vec<Vector>) -> Submodule {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Submodule { space: space.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(space: &FreeModule) -> Submodule {
        Submodule::new(space, Vec::new())
    }

    /// The whole free module.
    pub fn full(space: &FreeModule) -> Submodule {
        Submodule::new(space, (0..space.rank()).map(|p| Vector::unit(space, p)).collect())
    }

    pub fn space(&self) -> &FreeModule {
        &self.space
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_basis(&self.space, &self.gens)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.gb()?.contains(v))
    }

    pub fn reduce(&self, v: &Vector) -> Result<Vector> {
        Ok(self.gb()?.reduce(v))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.gb()?.is_empty())
    }

    fn same_space(&self, other: &Submodule) -> Result<()> {
        if self.space.ring() != other.space.ring() || self.space.rank() != other.space.rank() {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", self.space, other.space)));
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        self.same_space(other)?;
        let gb = other.gb()?;
        Ok(self.gens.iter().all(|g| gb.contains(g)))
    }

    /// Equality as submodules, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.gb()?.elements() == other.gb()?.elements())
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_space(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Submodule::new(&self.space, gens))
    }

    pub fn leading_module(&self) -> Result<MonomialModule> {
        Ok(MonomialModule::leading(self.gb()?))
    }
}
