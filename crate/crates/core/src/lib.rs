//! Exact solvers for the maximum vertex r-triangle s-club problem: find a
//! largest vertex set whose induced subgraph has diameter at most `s` and in
//! which every vertex lies in at least `r` triangles.

pub mod dp;
pub mod error;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod param;
pub mod solve;
pub mod testkit;
pub mod treedecomp;

pub use error::{Error, Result};
pub use graph::{verify_solution, Graph, ProblemInstance, Verdict, Vertex, VertexSet};
