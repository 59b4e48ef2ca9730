//! Combinatorics of matrix Schubert and Kazhdan-Lusztig varieties: opposite
//! Rothe diagrams, weight-cone graphs, torus-action complexity, toricity
//! criteria, Bruhat intervals, the induced statistical models, and an
//! exhaustive verification layer over small symmetric groups.

pub mod bruhat;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod kl;
pub mod matrix_schubert;
pub mod oracle;
pub mod perm;
pub mod statmodel;
pub mod symbolic;

pub use error::{Error, Result};
pub use perm::Perm;
