//! Definability on finite structures: automorphisms, pointwise
//! definability, extensions of ∈-structures, elementarity and
//! reconstruction from theories.

pub mod automorphism;
pub mod canonical;
pub mod elementary;
pub mod extension;
pub mod hf;
pub mod paris;
pub mod reconstruct;
pub mod types;

use thiserror::Error;

pub use automorphism::{automorphisms, definable_elements, AUTOMORPHISM_LIMIT};
pub use canonical::canonical_definition;
pub use elementary::{is_sigma_m_elementary, ElementarityVerdict};
pub use extension::{is_covering, is_end_extension, is_top_extension, Embedding};
pub use hf::{hf_universe, ranks};
pub use paris::{paris_check, ParisVerdict};
pub use reconstruct::{bounded_theory, find_isomorphism, reconstruct_from_theory, BoundedTheory, TheoryOracle};

pub use types::{definable_by_types, find_definition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefinabilityError {
    #[error("{what} exceeds the limit {limit}")]
    TooLarge { what: String, limit: usize },
    #[error("not a membership structure")]
    NotMembership,
    #[error("membership is not well-founded and extensional")]
    NotWellFounded,
    #[error("embedding is not an embedding: {0}")]
    BadEmbedding(String),
    #[error("inconsistent theory: {0}")]
    Inconsistent(String),
    #[error("theory does not determine a structure: {0}")]
    Insufficient(String),
}
