//! Kronecker sequences with small random perturbations, and the statistics
//! used to measure how uniform they are on the unit torus: pair correlations,
//! discrepancy and exponential sums.
//!
//! Runnable examples live in `examples/`, one per capability. The `ppclab`
//! binary exposes the same operations as CSV-producing subcommands.

pub mod cli;
pub mod discrepancy;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod kernels;
pub mod numtheory;
pub mod paircorr;
pub mod rng;
pub mod sequences;

pub use error::{Error, Result};
pub use geometry::{torus_dist_sup, TorusPoint, TorusPointSet};
pub use numtheory::{AlphaVector, FrequencyVector};
pub use paircorr::{pair_corr, pair_corr_naive, Method, PairCorrQuery, PairCorrResult};
pub use rng::RandomSource;
pub use sequences::{generate, prefix, SequenceSpec};
