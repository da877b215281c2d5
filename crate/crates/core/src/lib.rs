//! Tetrahedral Morton (TM) space-filling curve for Bey red-refined triangles
//! and tetrahedra.
//!
//! Every element of a refinement of the root simplex is identified by a
//! [`TetId`]: its anchor node, level and type. On top of that identifier the
//! crate provides constant-time element arithmetic (parent, children,
//! face-neighbors, containment), the TM-index and its gap-free consecutive
//! index, successor/predecessor enumeration, and a forest layer with
//! partitioned uniform construction and recursive adaptation.
//!
//! The [`oracle`] module is an independent, brute-force geometric model of
//! Bey's refinement rule. Nothing in the library calls it; it exists to
//! regenerate the lookup tables and to cross-check every operation in tests.
//!
//! Data-parallel loops (uniform construction, per-tree adaptation, forest
//! validation) use rayon when the default `parallel` feature is enabled and
//! fall back to sequential loops otherwise. [`Execution`] selects the path per
//! call.

mod error;
pub mod forest;
pub mod io;
pub mod oracle;
mod par;
pub mod perf;
pub mod sfc;
pub mod tables;
pub mod tet;
pub mod vtk;

pub use error::{Error, Result};
pub use forest::{AdaptStats, CoarseMesh, Forest, Tree, ValidationReport};
pub use par::Execution;
pub use sfc::{Cube6D, LinearIndex, TmCode};
pub use tables::{CubeId, Dim, LocalIndex, SimplexType};
pub use tet::{MeshConfig, TetId, VertexSet};
