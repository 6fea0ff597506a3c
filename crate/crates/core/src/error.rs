use thiserror::Error;

/// Errors produced by the geometry, constant, and quadrature routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The requested center dimension exceeds the Hurwitz-Radon bound for 2n.
    #[error("no H-type group with (n, m) = ({n}, {m}): m must satisfy m <= rho(2n) - 1 = {bound} (Hurwitz-Radon bound)")]
    InadmissibleGroup { n: usize, m: usize, bound: usize },

    /// A point does not match the group's horizontal/center dimensions.
    #[error("dimension mismatch: group expects z of length {expect_z} and w of length {expect_w}, got ({got_z}, {got_w})")]
    DimensionMismatch {
        expect_z: usize,
        expect_w: usize,
        got_z: usize,
        got_w: usize,
    },

    /// A scalar parameter is outside the range a formula is valid on.
    #[error("parameter {name} = {value} outside valid range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// An integral cannot converge for the given inputs.
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// A field evaluation returned NaN or infinity.
    #[error("non-finite field value at z = {z:?}, w = {w:?}")]
    NonFiniteSample { z: Vec<f64>, w: Vec<f64> },

    /// A normalization integral failed to produce a usable constant.
    #[error("normalization failed: {0}")]
    Normalization(String),

    /// The derivative-free search could not produce a result.
    #[error("optimization failed: {0}")]
    Optimization(String),

    /// An integration spec violates its own invariants.
    #[error("invalid integration spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
