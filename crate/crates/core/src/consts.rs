//! Numeric tolerances and limits shared across the engine.
//!
//! Comparisons happen at three distinct scales: admission of states (is
//! this vector unit?), equality of probabilities, and detection of genuine
//! law violations. The admission and equality tolerances absorb roundoff
//! from a few dozen double-precision gate applications; the counterexample
//! margin is deliberately much coarser so float noise can never be
//! mistaken for a refutation.

/// Tolerance on the squared norm for a vector to count as unit.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// Absolute tolerance when comparing probability-values.
pub const PROB_EQ_TOL: f64 = 1e-9;

/// A consequence counterexample must exceed this margin to be reported.
pub const COUNTEREXAMPLE_MARGIN: f64 = 1e-6;

/// Componentwise tolerance for operator-level gate identities.
pub const GATE_IDENTITY_TOL: f64 = 1e-12;

/// Squared-norm tolerance when loading realization files; looser than
/// [`UNIT_NORM_TOL`] to absorb decimal serialization, after which loaded
/// qubits are renormalized.
pub const REALIZATION_FILE_NORM_TOL: f64 = 1e-8;

/// Default qubit-width cap for dense matrix construction.
pub const DENSE_WIDTH_CAP: usize = 12;

/// Default sample budget for counterexample search.
pub const DEFAULT_BUDGET: usize = 10_000;
