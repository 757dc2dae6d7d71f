//! Imbalance-aware dense contact estimation toolkit.
//!
//! The crate covers the full data path for per-vertex binary contact:
//!
//! - [`mesh`]: topology, a proxy hand surface, multi-level downsampling regressors
//! - [`labeling`]: distance-threshold contact labels from an interacting mesh
//! - [`dataset`]: sample containers, dataset statistics, manifests, synthetic benchmark
//! - [`sampling`]: balanced contact sampling (scores, log-spaced bins, stratified resampling)
//! - [`losses`]: BCE / focal / class-balanced / vertex-level class-balanced losses, smoothness
//!   and regularization terms, all with analytic logit gradients
//! - [`train`]: a per-vertex logistic contact head, training loop, metrics and ablations
//! - [`cli`]: the `contactforge` command-line front end

pub mod cli;
pub mod dataset;
pub mod error;
pub mod labeling;
pub mod losses;
pub mod mesh;
pub mod sampling;
pub mod train;

mod io_util;

pub use error::{Error, Result};
