//! Adjunctions, monads and comonads on finite categories, their
//! resolutions, and the nucleus constructions.
//!
//! Conventions: an [`Adjunction`] has left adjoint `F̂: 𝔸 → 𝔹`, right
//! adjoint `Ǧ: 𝔹 → 𝔸`, unit `η: id ⇒ ǦF̂` and counit `ε: F̂Ǧ ⇒ id`. The
//! induced monad `T = ǦF̂` lives on `𝔸` and the comonad `S = F̂Ǧ` on `𝔹`.

mod adjunction;
mod big;
pub mod families;
mod io;
mod little;
mod morphisms;
mod resolutions;
mod simple;
mod street;

use thiserror::Error;

use crate::fincat::FincatError;

pub use adjunction::{
    check_adjunction, check_comonad, check_monad, comonad_of, monad_of, Adjunction, Comonad, Monad,
};
pub use big::{
    check_hom_bijection, is_nuclear, is_subnuclear, karoubi_adjunction, karoubi_comonad, karoubi_monad, lemma_a_squares,
    nucleus, nucleus_data, nucleus_data_unchecked, KaroubiAdjunction, NuclearEvidence, NucleusData, NucleusOptions,
    SubnuclearEvidence,
};
pub use io::{
    adjunction_bundle, load_bundle, monad_bundle, AdjunctionJson, Bundle, BundleJson, MonadJson,
};
pub use little::{little_nucleus, LittleNucleus};
pub use morphisms::{
    check_adjunction_morphism, check_comonad_morphism, check_monad_morphism, AdjunctionMorphism, ComonadMorphism,
    MonadMorphism,
};
pub use resolutions::{
    comparison_h0, comparison_h1, em_algebras, em_coalgebras, kleisli_comonad, kleisli_monad, Algebras, Coalgebras,
    Kleisli, KleisliComonad,
};
pub use simple::{
    check_retracts, check_splitting_lemma, check_unit_splitting, retract_witness, simple_nucleus, SimpleNucleus,
    SimpleObject,
};
pub use street::{
    check_street_idempotence, street_nucleus_comonad, street_nucleus_monad, StreetIdempotence,
};

/// Errors from the nucleus constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NucleusError {
    #[error(transparent)]
    Fincat(#[from] FincatError),
    #[error("carrier `{side}` is not idempotent-complete: `{idempotent}` does not split")]
    NotIdempotentComplete { side: String, idempotent: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("equivalence search undecided: {0}")]
    Undecided(String),
}
