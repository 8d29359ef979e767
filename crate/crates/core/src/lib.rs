//! Exact convex-hull machinery for the graph of `y = x_1 x_2 ... x_n` over a
//! nonnegative box where at most the last variable has a positive lower bound.
//!
//! * [`hull`]: extreme points, complete inequality systems, membership.
//! * [`optimize`]: combinatorial maximization over the hull with an exact
//!   dual optimality certificate for every outcome.
//! * [`volume`]: closed-form and decomposition volumes, plus a Monte Carlo
//!   estimator used as an independent check.
//!
//! All computations are carried out in exact rational arithmetic; floating
//! point only appears in the Monte Carlo sampler and its diagnostics.

pub mod error;
pub mod hull;
pub mod instance;
pub mod io;
pub mod optimize;
pub mod random;
pub mod rational;
pub mod volume;

pub use error::{Error, Result};
pub use instance::{factorial, IndexSets, Instance};
pub use rational::Rational;
