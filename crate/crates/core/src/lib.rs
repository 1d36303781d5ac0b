//! Exact prime counting and the divisibility question π(n) | n.
//!
//! - [`pi_engine`]: π(n) by segmented sieve, sublinear counting and
//!   checkpoints, plus streaming sweeps.
//! - [`analytic_bounds`]: certified enclosures of the explicit bounds
//!   n/(ln n − a) around π(n).
//! - [`predicates`]: the floor-function tests g, h, f and certified ln n.
//! - [`interval_solver`]: candidate intervals, gap zones and the ⌊e^a⌋ table.
//! - [`sequences`]: n/π(n), its integer values, witnesses and repeats.
//! - [`cli`]: the `pidiv` command line.

pub mod analytic_bounds;
pub mod cli;
pub mod error;
pub mod interval_solver;
pub mod pi_engine;
pub mod predicates;
pub mod sequences;

pub use error::{Claim, Error, Falsification, Result};
