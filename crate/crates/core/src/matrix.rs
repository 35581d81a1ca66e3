//! Dense complex square matrices and the Hermitian wrapper.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used for the Hermitian invariant of derived matrices.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Row-major `dim x dim` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl SquareComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-square or non-finite input.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::NotSquare {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from separate real and imaginary row grids.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if im.len() != dim {
            return Err(Error::NotSquare {
                expected: dim,
                got: im.len(),
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, i) in re.iter().zip(im) {
            if r.len() != dim || i.len() != dim {
                return Err(Error::NotSquare {
                    expected: dim,
                    got: if r.len() != dim { r.len() } else { i.len() },
                });
            }
            data.extend(r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)));
        }
        Self::from_row_major(dim, data)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let im: Vec<Vec<f64>> = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        Self::from_parts(rows, &im)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn real_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.iter().map(|z| z.re).collect()).collect()
    }

    pub fn imag_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.iter().map(|z| z.im).collect()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum entrywise distance `max_ij |self_ij - other_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max_ij |m_ij - conj(m_ji)|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for SquareComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for SquareComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

fn check_dims(a: &SquareComplexMatrix, b: &SquareComplexMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

/// A matrix known to satisfy `A = A^dagger` (stored exactly symmetrized).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: SquareComplexMatrix,
    correction: f64,
}

impl HermitianMatrix {
    /// Wraps a matrix that is Hermitian by construction. The input is
    /// symmetrized so the stored matrix is exactly Hermitian.
    pub(crate) fn from_trusted(m: SquareComplexMatrix) -> Self {
        Self {
            inner: m.hermitian_part(),
            correction: 0.0,
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_trusted(SquareComplexMatrix::from_diagonal(diag))
    }

    pub fn matrix(&self) -> &SquareComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> SquareComplexMatrix {
        self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Largest entrywise change made when symmetrizing the validated input.
    pub fn correction(&self) -> f64 {
        self.correction
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }
}

/// Accepts `m` as Hermitian when `max_ij |m_ij - conj(m_ji)| <= tol * max(1, max|m_ij|)`
/// and returns its Hermitian part `(M + M^dagger)/2`.
pub fn validate_hermitian(m: &SquareComplexMatrix, tol: f64) -> Result<HermitianMatrix> {
    if let Some(k) = m
        .as_slice()
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite {
            row: k / m.dim(),
            col: k % m.dim(),
        });
    }
    let asymmetry = m.hermitian_asymmetry();
    if asymmetry > tol * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { asymmetry });
    }
    let inner = m.hermitian_part();
    let correction = m.max_abs_diff(&inner)?;
    Ok(HermitianMatrix { inner, correction })
}

/// `Tr(AB) = sum_ij A_ij B_ji`.
pub fn trace_product(a: &SquareComplexMatrix, b: &SquareComplexMatrix) -> Result<Complex64> {
    check_dims(a, b)?;
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(acc)
}
