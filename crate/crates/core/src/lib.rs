//! Induced-subgraph obstructions to bounded treewidth in even-hole-free
//! graphs: generators, detectors, exact treewidth, the phantom and crystal
//! structures, and the procedures that extract one from the other.

pub mod canon;
pub mod detectors;
pub mod error;
pub mod extractors;
pub mod generators;
pub mod graph;
pub mod io;
pub mod structures;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{Digraph, Graph, VertexSet};
