use crate::syntax::ParseError;

/// Error type for all engine operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A basis state was requested for an empty bit string.
    #[error("bit string must be nonempty")]
    EmptyBitString,

    /// A register was built with an out-of-range width or an amplitude
    /// vector whose length is not 2ⁿ.
    #[error("malformed quregister: {0}")]
    Malformed(String),

    /// Two quregisters that must share a width do not.
    #[error("qubit counts differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A gate was applied to a vector that is not unit.
    #[error("state is not unit: squared norm is {norm_sqr}")]
    NotUnit { norm_sqr: f64 },

    /// A probability-value was requested for a vector with squared norm
    /// above 1.
    #[error("squared norm {norm_sqr} exceeds 1; probability-values are undefined")]
    NormExceedsOne { norm_sqr: f64 },

    /// A gate was applied to a state of the wrong width.
    #[error("gate expects width {expected}, state has width {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    /// A dense matrix was requested above the configured width cap.
    #[error("width {width} exceeds the dense-matrix cap of {cap} qubits")]
    WidthCap { width: usize, cap: usize },

    /// A formula mentions an atom the realization does not assign.
    #[error("atom `{0}` has no assigned qubit in the realization")]
    MissingAssignment(String),

    /// Truth-functional probability was requested for a formula
    /// containing the square root of negation.
    #[error("`snot` has no truth-functional probability rule")]
    NotTruthFunctional,

    /// The formula text is not in the grammar.
    #[error(transparent)]
    Parse(#[from] ParseError),

    /// A realization (in memory or from a file) is malformed.
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
}
