//! Exact computations with Koszul complexes, d-sequences and sequentially
//! Cohen–Macaulay modules over graded polynomial rings.

mod error;
pub mod field;
pub mod groebner;
pub mod koszul;
pub mod localcoh;
pub mod module;
mod parse;
pub mod problem;
pub mod poly;
pub mod ring;
pub mod seqcm;
pub mod sequences;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use groebner::{FreeModule, GroebnerBasis, Submodule, Vector};
pub use poly::Polynomial;
pub use ring::{Monomial, MonomialOrder, Ring};
