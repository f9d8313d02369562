//! Graph complexes built from black and white vertices and several edge
//! kinds: signed canonical forms, bases, differentials, chain maps and exact
//! cohomology ranks.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, caching and the
//! command-line driver live in the `graphcx` crate.

#![no_std]

extern crate alloc;

pub mod canon;
pub mod chain;
pub mod cohomology;
pub mod differential;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod linalg;
pub mod maps;
pub mod oracle;
pub mod relations;

pub use canon::{canonicalize, CanonicalForm, FlipRule, OrientationRecipe};
pub use chain::{Chain, Q};
pub use cohomology::{cohomology_dims, CohomologyTable};
pub use differential::{delta, delta_chain, delta_part, lie_bracket, pre_lie_insert, DeltaPart};
pub use enumerate::{generate_basis, Basis, EnumOptions};
pub use error::{Error, GraphError, ParseError, Result};
pub use family::{ComplexId, ComplexSpec, Family};
pub use graph::{Edge, EdgeKind, LabeledGraph, Valence, VertexColor};
pub use linalg::{FieldTag, SparseMatrix};
pub use maps::{apply_map, Lambda, MapId};
