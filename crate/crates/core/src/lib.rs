//! Symbolic computation with two-sided restriction monoids.
//!
//! The crate works with finite algebras of type (2,1,1,0) given by dense
//! operation tables, with exact arithmetic in free inverse monoids (Munn
//! trees) and free restriction monoids, and with the expansions of a monoid
//! `M` determined by a set of admissible relations: `FR_R(M)` and its inverse
//! counterpart `FI_R(M)`.
//!
//! * [`algebra`]: finite monoids, restriction monoids, semilattices,
//!   congruences, the natural order, isomorphism search.
//! * [`munn`]: the free inverse monoid on a finite alphabet.
//! * [`freerestr`]: the free restriction monoid as pairs `(E, m)` and the
//!   projection map `u ↦ D_u`.
//! * [`expansions`]: prefix expansions of groups, partial action products,
//!   bounded enumeration of presented expansions.
//! * [`premorph`]: premorphisms and their classification.
//! * [`verify`]: reproducible harnesses bundling the above into checks.

pub mod algebra;
pub mod error;
pub mod expansions;
pub mod freerestr;
pub mod munn;
pub mod premorph;
pub mod verify;

pub use error::{Error, Result};
