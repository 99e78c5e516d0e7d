//! Normed symmetric monoidal categories over a finite group, computed at
//! desk scale: finite groups and exponents, indexing systems, free
//! equivariant operads on labeled trees, coherence paths, finite normed
//! categories with their interpretation, the functor categories Fun(TG, C),
//! and comparisons between permutativity operads.

pub mod groups;
pub mod gsets;
pub mod indexing;
pub mod free_operad;
pub mod smn;
pub mod report;
pub mod fincat;
pub mod funtg;
pub mod operad_zoo;
