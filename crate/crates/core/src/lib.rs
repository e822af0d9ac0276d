//! Degree-corrected stochastic block models with optional assortativity
//! constraints, fitted by maximum likelihood.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`], [`partition`], [`stats`] and [`io`] hold the data model:
//!   an immutable weighted multigraph, a node-to-block assignment and the
//!   block sufficient statistics every kernel consumes.
//! * [`likelihood`] evaluates the Poisson DC-SBM log-likelihood, its
//!   closed-form maximiser, the profile likelihood and modularity.
//! * [`solver`] maximises the likelihood over the block matrix under strong
//!   or weak assortativity with a log-barrier Newton method, and carries an
//!   independent golden-section oracle.
//! * [`search`] is the relocation local search with incremental move
//!   filtering and seeded multi-start.
//! * [`generators`], [`metrics`] and [`benchmark`] reproduce the synthetic
//!   experiments and emit CSV/JSON results.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod benchmark;
pub mod error;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod io;
pub mod likelihood;
pub mod metrics;
pub mod partition;
pub mod search;
pub mod solver;
pub mod stats;

pub use error::{Error, Result};
pub use exec::ExecPolicy;
pub use graph::Graph;
pub use likelihood::OmegaMatrix;
pub use partition::Partition;
pub use search::{fit, multi_start, FitConfig, FitResult, Objective};
pub use solver::{solve_constrained, AssortativityMode, OmegaSolution, SolverConfig};
pub use stats::BlockStats;
