//! Exact spectral analysis of linear heptagonal networks.
//!
//! The crate builds the chain graph, block-diagonalizes its Laplacian
//! through the mirror symmetry, evaluates the published closed forms for
//! the Kirchhoff index and the spanning-tree count over exact arithmetic,
//! and audits every one of them against independent oracles (exact
//! effective resistances, matrix-tree cofactors, brute-force enumeration,
//! and floating-point spectra). Where the published statements are wrong,
//! the audits say so precisely instead of papering over the difference.

pub mod arith;
pub mod charpoly;
pub mod decompose;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
