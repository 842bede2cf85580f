//! Non-backtracking random walks on multigraphs: exact n-step laws, limits,
//! spectral radii, cogrowth series and amenability diagnostics.

pub mod amenability;
pub mod cogrowth;
pub mod edge_space;
pub mod error;
pub mod graph;
pub mod numeric;
pub mod walks;

pub use error::{NbrwError, Result};
