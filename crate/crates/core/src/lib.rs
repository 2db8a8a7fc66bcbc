//! Minkowski sample means of finitely supported random convex sets.
//!
//! The crate has three layers:
//!
//! - [`convex`]: an exact V-polytope kernel (hulls, Minkowski sums, support
//!   functions, argmax faces, Euclidean projection, Hausdorff distances).
//! - [`random_set`]: discrete random sets `P(Y = K_j) = p_j`, their Aumann
//!   expectation `Σ p_j K_j`, faces of the expectation and selections.
//! - [`limit`]: seeded Monte Carlo experiments for the law of large numbers
//!   and the boundary central limit theorems of the sample mean
//!   `(Y_1 + … + Y_N) / N`, with verdicts from [`stats`].
//!
//! [`io`] holds the JSON scene format and report writers used by the
//! `randset` binary.

pub mod cli;
pub mod convex;
pub mod error;
pub mod io;
pub mod limit;
pub mod random_set;
pub mod rng;
pub mod stats;
pub mod vector;

pub use convex::ConvexBody;
pub use error::{Error, Result};
pub use random_set::{DiscreteRandomSet, Selection};
pub use vector::{Direction, Vector};

/// Crate version, echoed in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
