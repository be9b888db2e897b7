//! Induced-subgraph orders, uniformicity, and structural certifiers for
//! graph classes defined by two forbidden induced subgraphs.

pub mod catalog;
pub mod codec;
pub mod error;
pub mod graph;
pub mod ops;
pub mod order;
pub mod uniform;
pub mod antichains;
pub mod structure;
pub mod classifier;
pub mod oracle;
pub mod selftest;

pub use error::{Error, Result};
pub use graph::Graph;
