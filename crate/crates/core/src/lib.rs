//! Entropic and entropy-energy inequalities for qudit density matrices.
//!
//! A qudit state is zero-padded to a composite dimension so that two
//! "artificial subsystems" can be traced out (the qubit portrait). The crate
//! checks subadditivity of the von Neumann entropy across that split, and the
//! entropy-energy family `S(rho) <= beta Tr(rho H) + ln Tr e^{-beta H}`, which is
//! nonnegativity of the relative entropy to the Gibbs state.
//!
//! All linear algebra is self-contained: a cyclic complex Jacobi eigensolver
//! serves matrices up to a few dozen dimensions.

pub mod density;
pub mod document;
pub mod eigen;
pub mod error;
pub mod format;
pub mod matrix;
pub mod portrait;
pub mod report;
pub mod sampling;
pub mod sweep;
pub mod thermal;

pub use density::{density_diagnostics, validate_density, DensityMatrix, DensityValidation, ValidationDiagnostics, STATE_TOL};
pub use document::StateFileDocument;
pub use eigen::{eigh, spectral_function, EigenDecomposition, SpectralFn, SUPPORT_TOL};
pub use error::{Error, Result};
pub use matrix::{trace_product, validate_hermitian, HermitianMatrix, SquareComplexMatrix};
pub use num_complex::Complex64;
pub use portrait::{
    partial_trace, qubit_portrait, subadditivity_report, von_neumann_entropy, zero_pad_embed, PortraitPair,
    SubadditivityReport, Subsystem, MARGIN_TOL,
};
pub use report::{compare_bounds, BoundKind, ComparisonReport};
pub use sweep::{parse_beta_list, run_sweep, Beta, SweepConfig, SweepRow};
pub use thermal::{
    energetic_report, entropy_energy_report, example_family, example_hamiltonian, gibbs_state, log_partition,
    mean_energy, relative_entropy, special_qutrit_spectrum, Hamiltonian, ThermalBoundReport,
};
