//! Nuclei of adjunctions at three levels of concreteness.
//!
//! * [`fincat`]: finite categories, functors, natural transformations,
//!   Karoubi envelopes, distributors and equivalence search.
//! * [`nucleus`]: adjunctions, (co)monads, their resolutions and the big,
//!   simple and little nucleus constructions, with law checking.
//! * [`concept`]: formal contexts, Galois connections and concept lattices.
//! * [`linalg`]: the singular value decomposition as the nucleus of a real
//!   matrix.
//! * [`chu`]: finite Chu spaces and their separated-extensional reduction.

pub mod chu;
pub mod concept;
pub mod fincat;
pub mod linalg;
pub mod nucleus;
pub mod report;

pub use report::{Entry, Report, Status};
