//! Longest paths in trees, directed acyclic graphs and block graphs,
//! computed from booleanized powers of the adjacency matrix.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command-line front end live in the companion `lpath` crate.
//!
//! Module map:
//!
//! - [`bitmat`]: (0,1)-matrices stored as row and column bit vectors, with the
//!   AND-based boolean product and binary exponentiation.
//! - [`graph`]: the graph model, class validators, BFS distances and block
//!   (biconnected component) decomposition.
//! - [`lpp`]: longest-path lengths by binary search over matrix powers.
//! - [`paths`]: exact-distance pairs, chain extraction, enumeration of every
//!   longest path and closed-form path counts.
//! - [`oracle`]: brute-force ground truth, independent of everything above
//!   except [`graph::Graph`].
//! - [`generators`]: seeded random instances for every supported class.

#![no_std]
#![forbid(unsafe_code)]
// vertex ids and matrix indices are mixed everywhere
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitmat;
mod error;
pub mod generators;
pub mod graph;
pub mod lpp;
pub mod oracle;
pub mod paths;

pub use bitmat::BitMatrix;
pub use error::{Error, Result};
pub use graph::{BlockDecomposition, Graph, GraphClass};
pub use lpp::LppResult;
pub use paths::{Chain, Path, PathSet};
