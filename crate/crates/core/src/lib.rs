//! Graph embeddings on surfaces: face tracing, genus and strong-embedding
//! search, facial distance and GF(2) homology certificates, plus the
//! hexagonal-cylinder family of near-planar cubic graphs whose strong genus
//! exceeds their genus.

pub mod bounds;
pub mod draw;
#[cfg(feature = "cli")]
pub mod cli;
pub mod embedding;
pub mod families;
pub mod gf2;
pub mod graph;
pub mod homology;
pub mod planarity;
pub mod search;

pub use embedding::{Embedding, FaceWalk, SurfaceKind};
pub use graph::{Dart, Graph, Vertex};
