//! Exact proportionality analysis for approval-based committee elections.
//!
//! The crate answers questions about cohesive voter groups and the
//! proportionality degree (PD) of committees:
//!
//! * [`cohesive`] finds, enumerates and counts `ℓ`-cohesive groups, with a
//!   brute-force oracle, an inclusion–exclusion counter, and polynomial
//!   algorithms for candidate-interval (CI) and voter-interval (VI) elections.
//! * [`pd`] decides PD failures, verifies PD functions, computes exact PD
//!   profiles and searches for committees that achieve a target PD.
//! * [`ilp`] holds the integer programs behind the ILP routes, an exact
//!   branch-and-bound solver, and an LP-format exporter.
//! * [`rules`] computes exact AV/CC/PAV winners and checks JR/EJR.
//!
//! All thresholds and averages are exact rationals; there are no tolerances.

pub mod bitset;
pub mod cohesive;
pub mod combinatorics;
pub mod election;
mod error;
pub mod ilp;
mod limits;
pub mod pd;
mod rational;
pub mod rules;

pub use bitset::BitSet;
pub use election::{
    min_group_size, example_election, satisfaction, verify_interval_order, Committee, Election,
    IntervalOrder, OrderKind, PdFunction, PdKind,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use rational::Rational;
