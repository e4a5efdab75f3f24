//! General Grundy domination: exact and heuristic solvers, the integer
//! programming formulations F1..F8, and tools to check polyhedral claims about
//! them on small instances.

pub mod closedform;
pub mod error;
pub mod graph;
pub mod lp;
pub mod model;
pub mod polytope;
pub mod separation;
pub mod sequence;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Instance;
pub use vertex_set::VertexSet;
