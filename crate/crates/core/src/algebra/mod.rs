//! Finite algebras given by operation tables.

mod biunary;
mod congruence;
mod inverse;
mod iso;
mod monoid;
mod ops;
mod semilattice;
pub mod term;

pub use biunary::{AxiomReport, AxiomViolation, FiniteBiunary, PartialOrderRel, Side};
pub use congruence::{Congruence, UnionFind};
pub use inverse::{
    check_inverse_table, inverse_as_restriction, munn_monoid, symmetric_inverse_monoid,
    FiniteInverseMonoid, MunnMonoid, PartialBijection, SymmetricInverse,
};
pub use iso::{
    default_iso_limit, extend_homomorphism, find_isomorphism, find_isomorphism_bounded,
    generating_set, DEFAULT_ISO_LIMIT,
};
pub use monoid::FiniteMonoid;
pub use ops::RestrictionOps;
pub use semilattice::FiniteSemilattice;
pub use term::Term;
