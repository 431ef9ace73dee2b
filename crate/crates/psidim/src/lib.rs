//! Capacity measures and guaranteed-risk bounds for multi-category
//! classifiers with real-vector outputs.
//!
//! The crate has four core pieces plus a harness:
//!
//! - [`margin`]: score-vector algebra — the classification rule, the
//!   margin operators and their squashed compositions, empirical risks.
//! - [`capacity`]: covering numbers and shattering dimensions of finite
//!   class restrictions, exact at desk scale, with replayable certificates.
//! - [`msvm`]: Mercer kernels, a multi-class SVM trained by projected
//!   subgradient descent under the sum-to-zero constraint, and the norm
//!   statistics the bound chain consumes.
//! - [`bounds`]: closed-form evaluators for the guaranteed-risk chain,
//!   carried in log space end to end.
//! - [`harness`] and [`dataset`]: CLI plumbing, file formats, synthetic
//!   generators and the self-check suites ([`selfcheck`]).
//!
//! With the default `parallel` feature the exhaustive searches fan out via
//! rayon; disabling it leaves the sequential fallback, with identical
//! results.

pub mod bounds;
pub mod capacity;
pub mod dataset;
pub mod error;
mod exec;
pub mod harness;
pub mod margin;
pub mod msvm;
pub mod selfcheck;

pub use error::{Error, Result};
