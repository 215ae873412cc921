//! Engine for the quantum computational logic QCL.
//!
//! Sentence meanings are quregisters: unit vectors in the n-fold tensor
//! product of C². Connectives act through reversible gates (the Toffoli
//! gate, `NOT`, and the square root of `NOT`), and every quregister carries
//! a probability-value: the squared-modulus mass on basis strings ending
//! in 1. Logical consequence compares probability-values across all
//! realizations, which this crate semi-decides by seeded randomized search
//! cross-checked against a dense-matrix oracle.
//!
//! Module map:
//! - [`quregister`]: amplitude vectors, tensor products, the probability
//!   functional.
//! - [`gates`]: structured O(2ⁿ) kernels for `NOT`, `√NOT`, Toffoli, and
//!   the derived `AND`/`OR`.
//! - [`dense`]: explicit-matrix oracle used to cross-validate the kernels.
//! - [`syntax`]: the sentential language, its parser and printer.
//! - [`semantics`]: realizations, probability-values of sentences,
//!   consequence, counterexample search.
//! - [`laws`]: the built-in registry of holding and failing laws plus the
//!   suite runner.
//! - [`xcheck`]: kernel-vs-oracle agreement reports.

pub mod consts;
pub mod dense;
mod error;
pub mod gates;
pub mod laws;
pub mod quregister;
pub mod semantics;
pub mod syntax;
pub mod xcheck;

pub use error::Error;
pub use quregister::{Bit, CoefficientPartition, Quregister};
pub use syntax::Formula;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
