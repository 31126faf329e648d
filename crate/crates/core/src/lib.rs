//! Edge-private graph release and evaluation.
//!
//! The pipeline: decompose a graph's adjacency matrix with a deterministic
//! dense SVD, perturb the leading singular values under a Gaussian mechanism
//! and the edge count under a Laplace mechanism, rebuild and binarize a
//! low-rank adjacency matrix, train a GCN on the released graph, and measure
//! both node-classification utility and resilience against edge-inference
//! attacks.
//!
//! Modules follow the pipeline stages:
//! - [`graph`]: graph representation, dataset file ingestion, normalization.
//! - [`spectral`]: truncated SVD, anchored projection, low-rank rebuild,
//!   shared-basis diagnostics.
//! - [`privacy`]: the singular-value mechanism and baseline mechanisms, noise
//!   calibration, budget accounting.
//! - [`learning`]: GCN/MLP models with analytic gradients, Adam training,
//!   F1 metrics.
//! - [`attacks`]: edge-inference attacks (posterior distance, feature
//!   influence, raw similarity) and exact ROC-AUC scoring.
//! - [`harness`]: experiment grids over mechanisms, budgets, ranks and seeds.
//!
//! All randomness flows from explicit seeds through labeled, independent
//! streams ([`rng`]), so every operation is reproducible bit-for-bit. With
//! the `parallel` feature (default) data-parallel inner loops run on rayon;
//! results are identical to the sequential fallback.

pub mod attacks;
pub mod error;
pub mod graph;
pub mod harness;
pub mod learning;
pub mod linalg;
pub mod privacy;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
