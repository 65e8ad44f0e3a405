//! Algebraic connectivity of unions of Erdős–Rényi random graphs.
//!
//! A union of `N` independent `G(n, p)` graphs is again Erdős–Rényi with
//! edge probability `1 - (1 - p)^N`. This crate computes closed-form bounds
//! on the algebraic connectivity `lambda2` of such unions and checks them
//! against sampling and exact enumeration:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | sampling, unions, Laplacians, BFS connectivity, edge-list I/O |
//! | [`spectral`] | symmetric eigensolver, `lambda2`, reference spectra |
//! | [`analytic`] | moments `E[L^k]` and `E[l_i^k]` for `k <= 4` |
//! | [`bounds`] | `E[lambda2]`/`Var[lambda2]` bounds, `N_min`, probability bound |
//! | [`montecarlo`] | reproducible parallel estimation with confidence intervals |
//! | [`oracle`] | exact enumeration for `n <= 6` |
//! | [`tables`] | regeneration of the reference `N_min` and probability tables |
//! | [`cli`] | the `erconn` command line |
//!
//! ```
//! use erconn::{bounds, graph::ModelParams};
//!
//! let params = ModelParams::new(50, 0.1).unwrap();
//! let n_min = bounds::n_min(params).unwrap();
//! let prob = bounds::connectivity_probability_bound(params, 125).unwrap();
//! assert!(n_min.rounded_up <= 125);
//! assert!(prob.value > 0.99);
//! ```

pub mod analytic;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod montecarlo;
pub mod oracle;
pub mod spectral;
pub mod tables;

pub use error::{Error, Result};
pub use graph::{GraphSample, LaplacianMatrix, ModelParams};
pub use matrix::Matrix;
pub use spectral::Spectrum;
