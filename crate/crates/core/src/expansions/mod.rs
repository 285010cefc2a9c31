//! Expansions of monoids: prefix expansions of groups, partial action
//! products, and presented expansions `FR_R(M)`, `FI_R(M)`.

pub mod enumerate;
pub mod eta;
pub mod lift;
pub mod prefix;
pub mod product;

pub use enumerate::{
    bounded_enumerate, ClosedModel, Enumeration, DEFAULT_BOUND, DEFAULT_MAX_ELEMENTS, ExtraRelation, PresentedExpansion, RelationTag,
    Signature,
};
pub use eta::{conjugation_premorphism, eta_tilde, EtaOutcome};
pub use lift::{lift_homomorphism, lift_prefix, projection_to_monoid, Lift};
pub use prefix::{prefix_expand_group, prefix_size_formula, PrefixExpansion, PrefixPair, MAX_PREFIX_GROUP};
pub use product::{
    build_partial_product, cg_reconstruct, underlying_premorphism, CgReconstruction, PartialProduct,
    UnderlyingPremorphism,
};
