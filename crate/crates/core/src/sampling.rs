//! Random matrices for property tests and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::eigen::eigh;
use crate::matrix::{HermitianMatrix, SquareComplexMatrix};
use crate::thermal::Hamiltonian;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with independent standard complex normal entries.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareComplexMatrix {
    let data = (0..n * n).map(|_| gaussian(rng)).collect();
    SquareComplexMatrix::from_row_major(n, data).expect("finite samples")
}

/// `(G + G^dagger) / 2` for Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianMatrix {
    HermitianMatrix::from_trusted(random_complex(rng, n))
}

/// `A^dagger A / Tr(A^dagger A)` for Gaussian `A` (Hilbert-Schmidt measure).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix {
    let a = random_complex(rng, n);
    let m = a.adjoint().matmul(&a).expect("same dimension");
    let trace = m.trace().re;
    DensityMatrix::from_trusted(HermitianMatrix::from_trusted(m.scale(1.0 / trace)))
}

/// Eigenvector matrix of a random Hermitian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareComplexMatrix {
    eigh(&random_hermitian(rng, n)).expect("jacobi converges").unitary
}

/// Random qutrit Hamiltonian with `H12 = H23 = 0` (1-based) and Gaussian
/// diagonal and `H13` entries.
pub fn random_sparse_qutrit_hamiltonian<R: Rng + ?Sized>(rng: &mut R) -> Hamiltonian {
    let mut m = SquareComplexMatrix::zeros(3);
    for i in 0..3 {
        m[(i, i)] = Complex64::new(rng.sample(StandardNormal), 0.0);
    }
    let h13 = gaussian(rng);
    m[(0, 2)] = h13;
    m[(2, 0)] = h13.conj();
    Hamiltonian::new(HermitianMatrix::from_trusted(m))
}

/// Conjugation `V rho V^dagger` by a unitary.
pub fn conjugate(rho: &DensityMatrix, v: &SquareComplexMatrix) -> DensityMatrix {
    let m = v
        .matmul(rho.matrix())
        .and_then(|vm| vm.matmul(&v.adjoint()))
        .expect("same dimension");
    DensityMatrix::from_trusted(HermitianMatrix::from_trusted(m))
}
