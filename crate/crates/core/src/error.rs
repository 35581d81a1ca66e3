use thiserror::Error;

use crate::format::fmt_sig;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonFinite: entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("NotSquare: expected {expected} entries, got {got}")]
    NotSquare { expected: usize, got: usize },

    #[error("EmptyMatrix: dimension must be at least 1")]
    EmptyMatrix,

    #[error("NotHermitian: asymmetry {}", fmt_sig(*asymmetry, 6))]
    NotHermitian { asymmetry: f64 },

    #[error("TraceNotOne: deviation {}", fmt_sig(*deviation, 6))]
    TraceNotOne { deviation: f64 },

    #[error("NotPositive: eigenvalue {}", fmt_sig(*min_eigenvalue, 6))]
    NotPositive { min_eigenvalue: f64 },

    #[error("NegativeSpectrum: eigenvalue {} below support tolerance", fmt_sig(*eigenvalue, 6))]
    NegativeSpectrum { eigenvalue: f64 },

    #[error("ConvergenceFailure: off-diagonal norm {off_norm:e} after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("DimensionMismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("DimensionShrink: cannot embed dimension {from} into {to}")]
    DimensionShrink { from: usize, to: usize },

    #[error("DimensionNotFactorizable: {dim} != {n1} x {n2}")]
    DimensionNotFactorizable { dim: usize, n1: usize, n2: usize },

    #[error("OverflowRisk: |beta| * spectral spread = {} exceeds {limit}", fmt_sig(*exponent, 6))]
    OverflowRisk { exponent: f64, limit: f64 },

    #[error("NonFiniteBeta: beta must be finite")]
    NonFiniteBeta,

    #[error("SparsityViolated: entry ({row}, {col}) has magnitude {}", fmt_sig(*magnitude, 6))]
    SparsityViolated { row: usize, col: usize, magnitude: f64 },

    #[error("ParamOutOfRange: {name} = {value} outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("InconsistentBounds: margin {margin:e} vs relative entropy {relative_entropy:e}")]
    InconsistentBounds { margin: f64, relative_entropy: f64 },

    #[error("InequalityViolated: {0}")]
    InequalityViolated(String),

    #[error("ParseError: {0}")]
    Parse(String),
}
