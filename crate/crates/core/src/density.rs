//! Density matrices and validation of externally reconstructed states.

use serde::Serialize;

use crate::eigen::{eigh, EigenDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{validate_hermitian, HermitianMatrix, SquareComplexMatrix};

/// Default tolerance for trace, positivity and hermiticity checks on states.
pub const STATE_TOL: f64 = 1e-8;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    inner: HermitianMatrix,
}

impl DensityMatrix {
    /// Wraps a state that is valid by construction (partial traces, Gibbs states, ...).
    pub(crate) fn from_trusted(inner: HermitianMatrix) -> Self {
        Self { inner }
    }

    /// Maximally mixed state `I/n`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(HermitianMatrix::from_real_diagonal(&vec![1.0 / dim as f64; dim]))
    }

    /// Diagonal state; the entries must already form a probability vector.
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        let m = SquareComplexMatrix::from_diagonal(p);
        validate_density(&m, STATE_TOL, false).map(|v| v.state)
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.inner
    }

    pub fn matrix(&self) -> &SquareComplexMatrix {
        self.inner.matrix()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn eigh(&self) -> Result<EigenDecomposition> {
        eigh(&self.inner)
    }
}

/// Diagnostics gathered while validating a candidate state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationDiagnostics {
    pub hermiticity_residual: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    /// Max entrywise change made by the repair; `None` when no repair was requested.
    pub repair_distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityValidation {
    pub state: DensityMatrix,
    pub diagnostics: ValidationDiagnostics,
}

/// Hermiticity residual, trace deviation and lowest eigenvalue of the
/// Hermitian part of `m`, without accepting or rejecting it.
pub fn density_diagnostics(m: &SquareComplexMatrix) -> Result<ValidationDiagnostics> {
    let hermitian = validate_hermitian(m, f64::INFINITY)?;
    Ok(ValidationDiagnostics {
        hermiticity_residual: m.hermitian_asymmetry(),
        trace_deviation: (hermitian.trace() - 1.0).abs(),
        min_eigenvalue: eigh(&hermitian)?.eigenvalues[0],
        repair_distance: None,
    })
}

/// Checks that `m` is a density matrix within `tol`.
///
/// With `fix = false` the first violated invariant is returned as an error,
/// checked in the order hermiticity, trace, positivity. With `fix = true` the
/// matrix is symmetrized, negative eigenvalues are clamped to zero and the
/// trace renormalized to one; only a state with no positive weight left fails.
pub fn validate_density(m: &SquareComplexMatrix, tol: f64, fix: bool) -> Result<DensityValidation> {
    let hermiticity_residual = m.hermitian_asymmetry();
    let hermitian = if fix {
        validate_hermitian(m, f64::INFINITY)?
    } else {
        validate_hermitian(m, tol)?
    };

    let trace = hermitian.trace();
    let trace_deviation = (trace - 1.0).abs();
    let decomposition = eigh(&hermitian)?;
    let min_eigenvalue = decomposition.eigenvalues[0];

    if !fix {
        if trace_deviation > tol {
            return Err(Error::TraceNotOne {
                deviation: trace_deviation,
            });
        }
        if min_eigenvalue < -tol {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        return Ok(DensityValidation {
            state: DensityMatrix::from_trusted(hermitian),
            diagnostics: ValidationDiagnostics {
                hermiticity_residual,
                trace_deviation,
                min_eigenvalue,
                repair_distance: None,
            },
        });
    }

    let clamped: Vec<f64> = decomposition.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if total <= 0.0 || total.is_nan() {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    let weights: Vec<f64> = clamped.iter().map(|l| l / total).collect();
    let repaired = decomposition.compose(&weights);
    let repair_distance = m.max_abs_diff(repaired.matrix())?;

    Ok(DensityValidation {
        state: DensityMatrix::from_trusted(repaired),
        diagnostics: ValidationDiagnostics {
            hermiticity_residual,
            trace_deviation,
            min_eigenvalue,
            repair_distance: Some(repair_distance),
        },
    })
}
