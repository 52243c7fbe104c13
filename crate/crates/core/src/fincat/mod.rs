//! Finite categories and the structure built on them.
//!
//! A [`FiniteCategory`] stores its composition as a dense table indexed by
//! morphism pairs, so composing is a lookup. Functors and natural
//! transformations hold their categories behind [`Arc`](std::sync::Arc) so
//! that derived categories can be shared freely.

mod build;
mod category;
mod distributor;
mod equivalence;
mod functor;
mod io;
mod karoubi;
mod lifted;
mod split;
mod validate;

use thiserror::Error;

use crate::report::Report;

pub use build::CategoryBuilder;
pub use category::{FiniteCategory, MorId, Morphism, ObjId};
pub use distributor::{grothendieck, FiniteDistributor, Grothendieck};
pub use equivalence::{
    equivalent, find_isomorphism, find_natural_iso, is_equivalence, iso_between, iso_classes, skeleton,
    skeleton_data, EquivalenceCheck, EquivalenceOutcome, IsoOutcome, Skeleton, DEFAULT_SEARCH_CAP,
};
pub use functor::{Functor, NaturalTransformation};
pub use io::{
    category_dot, category_from_json, category_to_json, functor_from_json, functor_to_json, nat_trans_components_from_json,
    nat_trans_to_json, CategoryJson, CompositionJson, FunctorJson, MorphismJson, NatTransJson,
};
pub use karoubi::{all_splittings, karoubi_envelope, split_idempotent, Karoubi, Retraction};
pub use lifted::{full_image, full_subcategory, FullImage, Lifted};
pub use split::{check_split_equalizer, is_equalizer, SplitEqualizer, SplitEqualizerOutcome};
pub use validate::{validate_category, validate_functor, validate_nat_trans};

/// Errors raised by structural problems in categorical data. Law
/// violations are reported through [`Report`] instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FincatError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("identity `{morphism}` is not an endomorphism of `{object}`")]
    BadIdentity { object: String, morphism: String },
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("category fails its axioms:\n{0}")]
    InvalidCategory(Report),
    #[error("mismatched categories: {0}")]
    Mismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),
    #[error("idempotent `{0}` has no splitting")]
    NoSplitting(String),
    #[error("composite `{then}` after `{first}` leaves the subcategory")]
    NotClosed { first: String, then: String },
}
