//! Chaotic operads beside SM_N: the (G-)permutativity operads and the
//! comparison maps into them, admissible sets of products and free
//! coproducts, and the change of norms along `i` and `r`.
//!
//! N∞-ness is checked through a proxy: Σ-free levels, nonempty G-fixed
//! objects at every implemented level, and chaoticity. The homotopical
//! statement itself is out of reach of finite checks.

use thiserror::Error;

use crate::free_operad::{act, find_fixed_tree, GeneratorSet, Tree};
use crate::groups::Permutation;
use crate::indexing::IndexingError;
use crate::smn::SmnError;

pub mod change;
pub mod lattice;
pub mod permutativity;

pub use change::{change_of_norms, fixed_witness, NormChange, WitnessSource};
pub use lattice::{lattice_check, orbit_exponents, product_admissibles, suboperad_property};
pub use permutativity::{build_pg_level, comparison_maps, fixed_profile, ChaoticLevel, ChaoticOperadLevelwise, FixedProfile, LevelMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("{what} has {size} elements, above the guard of {limit}")]
    TooLarge { what: String, size: usize, limit: usize },
    #[error("N generates {n} but N ∪ M generates {union}")]
    NotSameIndexing { n: String, union: String },
    #[error("no tree of depth at most {depth} is fixed by the graph of `{id}`")]
    NoFixedWitness { id: String, depth: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Indexing(#[from] IndexingError),
    #[error(transparent)]
    Smn(#[from] SmnError),
}

/// Depth of the first fixed-tree search; one retry goes one level deeper.
pub const WITNESS_DEPTH: usize = 3;

/// Trees per arity on which operad-map equations are sampled.
pub const SAMPLE_TREES: usize = 48;

/// Whether `t` is fixed by every element of `lambda`.
pub fn is_fixed(gens: &GeneratorSet, lambda: &[(usize, Permutation)], t: &Tree) -> bool {
    lambda.iter().all(|(g, s)| act(gens, *g, s, t).ok().as_ref() == Some(t))
}

/// Whether the free operad on `gens` has a `lambda`-fixed tree of arity n.
/// A pure permutation `(e, σ ≠ id)` renames some leaf, so it fixes nothing;
/// otherwise the answer is a search bounded by [`WITNESS_DEPTH`].
pub fn has_fixed_tree(gens: &GeneratorSet, lambda: &[(usize, Permutation)], n: usize) -> bool {
    let e = gens.group.identity();
    if lambda.iter().any(|(g, s)| *g == e && !s.is_identity()) {
        return false;
    }
    find_fixed_tree(gens, lambda, n, WITNESS_DEPTH).is_some()
}
