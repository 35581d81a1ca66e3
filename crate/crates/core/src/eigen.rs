//! Cyclic Jacobi eigensolver for complex Hermitian matrices and spectral
//! matrix functions built on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, SquareComplexMatrix};

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_RTOL: f64 = 1e-13;

/// `A = U diag(eigenvalues) U^dagger` with eigenvalues ascending and the
/// columns of `U` the matching eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub unitary: SquareComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `k` of `U`.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.unitary[(i, k)]).collect()
    }

    /// `U diag(values) U^dagger` for a caller-supplied spectrum.
    pub fn compose(&self, values: &[f64]) -> HermitianMatrix {
        assert_eq!(values.len(), self.dim(), "spectrum length must match dimension");
        let n = self.dim();
        let u = &self.unitary;
        let mut out = SquareComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &v) in values.iter().enumerate() {
                    if v != 0.0 {
                        acc += u[(i, k)] * u[(j, k)].conj() * v;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
        HermitianMatrix::from_trusted(out)
    }

    /// `U diag(f(lambda_i)) U^dagger`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.compose(&values)
    }

    /// Diagonal of `U^dagger M U`, i.e. `<u_k| M |u_k>` for each eigenvector.
    pub fn expectations(&self, m: &SquareComplexMatrix) -> Vec<f64> {
        let n = self.dim();
        let u = &self.unitary;
        (0..n)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let ui = u[(i, k)].conj();
                    for j in 0..n {
                        acc += ui * m[(i, j)] * u[(j, k)];
                    }
                }
                acc.re
            })
            .collect()
    }
}

/// Eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real symmetric Jacobi rotation, so `G = diag(1, e^{-i phi}) R(theta)`.
/// Iteration stops once the off-diagonal Frobenius norm is at most
/// `1e-13 * ||A||_F`.
///
/// Output is deterministic: eigenvalues ascending (stable for ties) and the
/// largest-magnitude component of every eigenvector real and positive.
pub fn eigh(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = SquareComplexMatrix::identity(n);

    let threshold = OFF_DIAGONAL_RTOL * m.frobenius_norm();
    let mut converged = false;
    let mut off = off_diagonal_norm(&m);
    for _ in 0..MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&m);
    }
    if !converged && off > threshold {
        return Err(Error::ConvergenceFailure {
            sweeps: MAX_SWEEPS,
            off_norm: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| m[(k, k)].re).collect();
    let mut unitary = SquareComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        let column: Vec<Complex64> = (0..n).map(|i| v[(i, src)]).collect();
        let phase = canonical_phase(&column);
        for (i, z) in column.iter().enumerate() {
            unitary[(i, dst)] = z * phase;
        }
    }

    Ok(EigenDecomposition { eigenvalues, unitary })
}

fn off_diagonal_norm(m: &SquareComplexMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `m[p][q]` (and `m[q][p]`) with `m <- G^dagger m G`, accumulating `v <- v G`.
fn rotate(m: &mut SquareComplexMatrix, v: &mut SquareComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = (apq / g).conj();
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    let n = m.dim();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * g_pp + mkq * g_qp;
        m[(k, q)] = mkp * g_pq + mkq * g_qq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = g_pp.conj() * mpk + g_qp.conj() * mqk;
        m[(q, k)] = g_pq.conj() * mpk + g_qq.conj() * mqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Unit phase that makes the largest-magnitude component real and positive.
/// Near-ties (within 1e-12 relative) resolve to the lowest index.
fn canonical_phase(column: &[Complex64]) -> Complex64 {
    let largest = column.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let pivot = column
        .iter()
        .find(|z| z.norm() >= largest * (1.0 - 1e-12))
        .expect("maximum is attained");
    pivot.conj() / pivot.norm()
}

/// Scalar functions applied through the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralFn {
    Exp,
    /// Natural log on the support; eigenvalues `<= SUPPORT_TOL` map to 0.
    LogOnSupport,
}

/// `U diag(f(lambda)) U^dagger` for `f` in [`SpectralFn`].
pub fn spectral_function(a: &HermitianMatrix, f: SpectralFn) -> Result<HermitianMatrix> {
    let decomposition = eigh(a)?;
    match f {
        SpectralFn::Exp => Ok(decomposition.map(f64::exp)),
        SpectralFn::LogOnSupport => {
            let lowest = decomposition.eigenvalues[0];
            if lowest < -SUPPORT_TOL {
                return Err(Error::NegativeSpectrum { eigenvalue: lowest });
            }
            Ok(decomposition.map(log_on_support))
        }
    }
}

pub(crate) fn log_on_support(x: f64) -> f64 {
    if x > SUPPORT_TOL {
        x.ln()
    } else {
        0.0
    }
}
