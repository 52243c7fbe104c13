//! Formal contexts, their Galois connections, concept lattices and the
//! Dedekind-MacNeille completion.
//!
//! Object sets and attribute sets are [`FixedBitSet`](fixedbitset::FixedBitSet)s
//! indexed by declaration order. `F̂` sends an object set to its shared
//! attributes ([`Context::intent`]) and `Ǧ` an attribute set to the objects
//! having all of them ([`Context::extent`]).

mod completion;
mod context;
mod galois;
mod io;
mod lattice;
mod poset;

use thiserror::Error;

pub use completion::{dedekind_macneille, Completion};
pub use context::Context;
pub use galois::{
    check_order_isomorphisms, closure_operator, fixpoint_lattices, galois_check, interior_operator, lower_sets,
    upper_sets, FixpointLattices, GaloisOptions, Operator, Side,
};
pub use io::{
    lattice_dot, lattice_json, parse_context, parse_csv, parse_cxt, write_cxt, ConceptJson, LatticeJson,
};
pub use lattice::{concept_lattice, Concept, ConceptLattice, LatticeOptions};
pub use poset::{Poset, PosetJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConceptError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a partial order: {0}")]
    InvalidOrder(String),
    #[error("incidence not closed under the orders: {0}")]
    NotClosed(String),
    #[error("more than {0} concepts")]
    TooManyConcepts(usize),
    #[error("more than {0} lower or upper sets")]
    TooLarge(u64),
    #[error("construction failed: {0}")]
    Construction(String),
}
