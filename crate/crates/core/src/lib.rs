//! Workbench for studying multi-objective estimation of distribution algorithms on
//! enumerable MNK-landscapes.
//!
//! The crate is organised bottom-up:
//!
//! * [`landscape`] generates, evaluates and persists MNK-landscape instances.
//! * [`enumeration`] holds Pareto dominance, exhaustive Pareto-set enumeration,
//!   non-dominated sorting and the `(1+ε)`-approximation check.
//! * [`features`] extracts the landscape features (hypervolume, Pareto-set
//!   distances and connectedness).
//! * [`bayesnet`] is a binary Bayesian network with K2 structure learning,
//!   Bayesian parameter estimates, the exact joint pmf and ancestral sampling.
//! * [`optimizers`] runs the Bayesian-network EDA (mBOA) and an NSGA-III style
//!   baseline with evaluation counting and success detection.
//! * [`analysis`] turns run records into expected runtimes, fits linear cost
//!   models and builds the probabilistic view of the Pareto front.
//! * [`cli`] orchestrates whole experiment campaigns on disk.

pub mod analysis;
pub mod bayesnet;
pub mod cli;
pub mod enumeration;
mod error;
pub mod features;
pub mod landscape;
pub mod optimizers;
pub mod rng;

pub use error::{Error, Result};
