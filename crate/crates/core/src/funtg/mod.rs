//! The prototypical normed category `Fun(TG, C)`: functors from the
//! translation category of G into a symmetric monoidal category C, with
//! levelwise structure, S-norms and untwistors, the fixed-point functors
//! relating it to categories of H-actions, the monoidal pushforward along
//! finite coverings, and the induced norm `N_K^H : KC -> HC`.
//!
//! Every functor is materialized as an explicit table so that the comparison
//! theorems can be checked exhaustively; all coset representative choices
//! flow through one [`ChoiceContext`].

use thiserror::Error;

pub mod choices;
pub mod fixed;
pub mod pushforward;
pub mod shapes;
pub mod structure;

pub use choices::ChoiceContext;
pub use fixed::{choice_sensitivity, fixed_point_functors, verify_fixed_points, verify_funtg_theorems, verify_norm_square, FixedPointBundle, TwistedPower};
pub use pushforward::{covering_errors, hhr_norm, monoidal_pushforward, Pushforward};
pub use shapes::{natural_iso_errors, CatFunctor, Diagram, DiagramCategory, TranslationCategory};
pub use structure::{build_funtg, discrete_obstruction, funtg_norm, funtg_nsmc, operad_pullback_nsmc, FunTG};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuntgError {
    #[error("{what} = {size} exceeds the limit {limit}")]
    TooLarge { what: String, size: usize, limit: usize },
    #[error("not a finite covering: {0}")]
    NotACovering(String),
    #[error("invalid coset representatives: {0}")]
    InvalidChoice(String),
    #[error("{0}")]
    Invalid(String),
}
