//! Combinatorial machinery for non-positively curved (NPC) cube complexes.
//!
//! The crate compiles gluing presentations into finite cube complexes and
//! implements the standard combinatorial toolkit around them:
//!
//! - vertex links and the flag/NPC condition ([`curvature`]),
//! - standard constructions: products, subdivisions, surfaces, tori, Salvetti
//!   complexes, and finite covers of one-vertex complexes ([`constructions`]),
//! - hyperplanes as midcube parallelism classes, carriers, and the four
//!   specialness pathologies ([`hyperplanes`]),
//! - combinatorial cubical maps with local-isometry and covering checks
//!   ([`maps`]),
//! - 1-skeleton distances, geodesic recognition, and convexity ([`metric`]),
//! - finite wall spaces and the Sageev dual construction ([`walls`]),
//! - presentations, small-cancellation conditions, Cayley-graph balls, and
//!   thin-triangle estimation ([`groups`]).
//!
//! Everything is exact and finite; no geometric realization is ever stored.

pub mod complex;
pub mod constructions;
pub mod curvature;
pub mod error;
pub mod groups;
pub mod hyperplanes;
pub mod io;
pub mod maps;
pub mod metric;
pub mod perm;
pub mod walls;

mod unionfind;

pub use complex::{CellId, CubeComplex, FacetGluing, GluingPresentation, LinkComplex};
pub use perm::SignedPermutation;
