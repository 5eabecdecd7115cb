//! Exact computer algebra for real and twisted spectral triples.
//!
//! Everything is computed over the Gaussian rationals extended by named
//! commuting symbols. Smooth functions on the manifold are modelled by
//! germs: a pointwise value plus independent gradient symbols.

pub mod actions;
pub mod clifford;
pub mod fluctuations;
pub mod linalg;
pub mod models;
pub mod scalars;
pub mod triples;
pub mod twists;

/// Version of the engine, recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
