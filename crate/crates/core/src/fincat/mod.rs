//! Finite G-categories with normed symmetric monoidal structure, the
//! interpretation of SM_N on them, and verifiers for the axioms, the
//! coherence theorem, and lax functors and monoidal transformations.

use thiserror::Error;

pub mod builtins;
pub mod category;
pub mod coherence;
pub mod io;
pub mod lax;
pub mod nonexample;
pub mod nsmc;

pub use category::{all_tuples, tuple_index, FiniteCategory, FiniteGCategory, FunctorTable, Morphism};
pub use coherence::{roundtrip_algebra_nsmc, verify_coherence_instance, Bounds};
pub use lax::{extend_lax_to_operad, validate_lax_functor, validate_monoidal_transformation, FunctorClass, LaxFunctor};
pub use nsmc::{validate_nsmc, Components, NormTables, NormedSmc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FincatError {
    #[error("invalid category data: {0}")]
    Invalid(String),
    #[error("unknown norm `{0}`")]
    UnknownNorm(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed file: {0}")]
    Parse(String),
}
