//! Orthogonality diagrams (pastings of measurement contexts), their two-valued
//! measures and partition logics, exact-rational polytope computations on the
//! measures, Born-rule probabilities on vector realizations, and correlation
//! scans over non-admissible value assignments.
//!
//! The crate is `no_std` + `alloc`: everything in here is pure computation on
//! owned data. File formats and the command-line front end live in the
//! companion `greechie-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod correlations;
pub mod geometry;
pub mod logic;
pub mod quantum;
pub mod states;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
