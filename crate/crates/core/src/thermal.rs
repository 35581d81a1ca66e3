//! Gibbs states, partition functions, relative entropy and the
//! entropy-energy inequality family `S(rho) <= beta <H> + ln Z(beta)`.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::eigen::{eigh, EigenDecomposition, SUPPORT_TOL};
use crate::error::{Error, Result};
use crate::matrix::{trace_product, validate_hermitian, HermitianMatrix, SquareComplexMatrix, HERMITICITY_TOL};
use crate::portrait::{entropy_of_spectrum, von_neumann_entropy, MARGIN_TOL};

/// Largest admissible `|beta| * (E_max - E_min)`.
pub const OVERFLOW_LIMIT: f64 = 700.0;

/// Weight of `rho` outside the support of `sigma` above which the relative
/// entropy is infinite.
pub const SUPPORT_LEAK_TOL: f64 = 1e-9;

const SPARSITY_TOL: f64 = 1e-10;

/// Hermitian energy matrix in units with hbar = k_B = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    inner: HermitianMatrix,
}

impl Hamiltonian {
    pub fn new(inner: HermitianMatrix) -> Self {
        Self { inner }
    }

    /// Validates hermiticity with the default relative tolerance.
    pub fn from_matrix(m: &SquareComplexMatrix) -> Result<Self> {
        validate_hermitian(m, HERMITICITY_TOL).map(Self::new)
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

    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(eigh(&self.inner)?.eigenvalues)
    }
}

/// Boltzmann data for one `(H, beta)` pair, computed with max-shifted exponents.
#[derive(Debug, Clone)]
struct Boltzmann {
    decomposition: EigenDecomposition,
    /// Normalized populations `e^{-beta E_i} / Z`.
    populations: Vec<f64>,
    /// `ln(e^{-beta E_i} / Z)`, finite even where the population underflows.
    log_populations: Vec<f64>,
    ln_z: f64,
}

fn boltzmann(h: &Hamiltonian, beta: f64) -> Result<Boltzmann> {
    if !beta.is_finite() {
        return Err(Error::NonFiniteBeta);
    }
    let decomposition = eigh(h.hermitian())?;
    let energies = &decomposition.eigenvalues;
    let spread = energies[energies.len() - 1] - energies[0];
    let exponent = beta.abs() * spread;
    if exponent > OVERFLOW_LIMIT {
        return Err(Error::OverflowRisk {
            exponent,
            limit: OVERFLOW_LIMIT,
        });
    }

    let exponents: Vec<f64> = energies.iter().map(|&e| -beta * e).collect();
    let dominant = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shifted_sum: f64 = exponents.iter().map(|x| (x - dominant).exp()).sum();
    let ln_shifted = shifted_sum.ln();
    let ln_z = dominant + ln_shifted;
    let log_populations: Vec<f64> = exponents.iter().map(|x| (x - dominant) - ln_shifted).collect();
    let populations = log_populations.iter().map(|l| l.exp()).collect();
    Ok(Boltzmann {
        decomposition,
        populations,
        log_populations,
        ln_z,
    })
}

/// Thermal state `e^{-beta H} / Tr e^{-beta H}`.
pub fn gibbs_state(h: &Hamiltonian, beta: f64) -> Result<DensityMatrix> {
    let b = boltzmann(h, beta)?;
    Ok(DensityMatrix::from_trusted(b.decomposition.compose(&b.populations)))
}

/// `ln Tr e^{-beta H}`.
pub fn log_partition(h: &Hamiltonian, beta: f64) -> Result<f64> {
    Ok(boltzmann(h, beta)?.ln_z)
}

/// `Re Tr(rho H)`.
pub fn mean_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    let z = trace_product(rho.matrix(), h.matrix())?;
    debug_assert!(
        z.im.abs() <= 1e-10 * h.matrix().max_abs().max(1.0) * rho.dim() as f64,
        "imaginary residue {} in Tr(rho H)",
        z.im
    );
    Ok(z.re)
}

/// Relative entropy `Tr(rho ln rho) - Tr(rho ln sigma)` in nats, or
/// `f64::INFINITY` when `rho` has weight outside the support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    let sigma_eig = sigma.eigh()?;
    let log_sigma: Vec<f64> = sigma_eig
        .eigenvalues
        .iter()
        .map(|&mu| if mu > SUPPORT_TOL { mu.ln() } else { f64::NEG_INFINITY })
        .collect();
    relative_entropy_in_basis(rho, &sigma_eig, &log_sigma)
}

/// Relative entropy against a state given by its eigenbasis and the logs of
/// its eigenvalues (`-inf` marks modes outside the support).
fn relative_entropy_in_basis(
    rho: &DensityMatrix,
    sigma_eig: &EigenDecomposition,
    log_sigma: &[f64],
) -> Result<f64> {
    let weights = sigma_eig.expectations(rho.matrix());
    let leak: f64 = weights
        .iter()
        .zip(log_sigma)
        .filter(|(_, l)| !l.is_finite())
        .map(|(w, _)| w.max(0.0))
        .sum();
    if leak > SUPPORT_LEAK_TOL {
        return Ok(f64::INFINITY);
    }
    let cross: f64 = weights
        .iter()
        .zip(log_sigma)
        .filter(|(_, l)| l.is_finite())
        .map(|(w, l)| w * l)
        .sum();
    let neg_entropy = -entropy_of_spectrum(&rho.eigh()?.eigenvalues);
    Ok(neg_entropy - cross)
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalBoundReport {
    pub beta: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "meanH")]
    pub mean_h: f64,
    #[serde(rename = "lnZ")]
    pub ln_z: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
    /// `+inf` serializes as JSON `null`.
    pub relative_entropy_to_gibbs: f64,
}

/// Evaluates `S(rho) <= beta <H> + ln Z(beta)` and cross-checks the margin
/// against `D(rho || sigma(beta))` computed in the Gibbs eigenbasis.
///
/// The cross-check runs only when `sigma(beta)` is numerically full rank;
/// disagreement beyond `1e-9` is reported as [`Error::InconsistentBounds`].
pub fn entropy_energy_report(rho: &DensityMatrix, h: &Hamiltonian, beta: f64) -> Result<ThermalBoundReport> {
    check_dims(rho.dim(), h.dim())?;
    let b = boltzmann(h, beta)?;
    let s = von_neumann_entropy(rho)?;
    let mean_h = mean_energy(rho, h)?;
    let rhs = beta * mean_h + b.ln_z;
    let margin = rhs - s;

    let log_sigma: Vec<f64> = b
        .populations
        .iter()
        .zip(&b.log_populations)
        .map(|(&p, &l)| if p > SUPPORT_TOL { l } else { f64::NEG_INFINITY })
        .collect();
    let relative = relative_entropy_in_basis(rho, &b.decomposition, &log_sigma)?;
    let full_rank = log_sigma.iter().all(|l| l.is_finite());
    if full_rank && relative.is_finite() && (relative - margin).abs() > MARGIN_TOL {
        return Err(Error::InconsistentBounds {
            margin,
            relative_entropy: relative,
        });
    }

    Ok(ThermalBoundReport {
        beta,
        s,
        mean_h,
        ln_z: b.ln_z,
        rhs,
        holds: margin >= -MARGIN_TOL,
        margin,
        relative_entropy_to_gibbs: relative,
    })
}

/// `S + <H> <= ln Tr e^{H}`, the `beta = -1` member of the family.
pub fn energetic_report(rho: &DensityMatrix, h: &Hamiltonian) -> Result<ThermalBoundReport> {
    entropy_energy_report(rho, h, -1.0)
}

/// Closed-form spectrum of a qutrit Hamiltonian with `H12 = H23 = 0`
/// (1-based), returned as `(E1, E2, E3)` with `E1 = H22` and `E2 <= E3` the
/// roots of the outer 2x2 block.
pub fn special_qutrit_spectrum(h: &Hamiltonian) -> Result<(f64, f64, f64)> {
    if h.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: 3,
        });
    }
    let m = h.matrix();
    let tol = SPARSITY_TOL * m.max_abs().max(1.0);
    for (row, col) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
        let magnitude = m[(row, col)].norm();
        if magnitude > tol {
            return Err(Error::SparsityViolated { row, col, magnitude });
        }
    }
    let h11 = m[(0, 0)].re;
    let h33 = m[(2, 2)].re;
    let coupling = (m[(0, 2)] * m[(2, 0)]).re;
    let discriminant = ((h11 - h33).powi(2) + 4.0 * coupling).max(0.0).sqrt();
    let e1 = m[(1, 1)].re;
    Ok((e1, (h11 + h33 - discriminant) / 2.0, (h11 + h33 + discriminant) / 2.0))
}

/// One-parameter example: `rho = diag(1+b, 1+b, 1-2b)/3` with the sparse
/// Hamiltonian `[[1,0,1],[0,-1,0],[1,0,1]]`, valid for `-1 <= b <= 1/2`.
pub fn example_family(b: f64) -> Result<(DensityMatrix, Hamiltonian)> {
    if !(-1.0..=0.5).contains(&b) {
        return Err(Error::ParamOutOfRange {
            name: "b",
            value: b,
            min: -1.0,
            max: 0.5,
        });
    }
    let p = (1.0 + b) / 3.0;
    let rho = DensityMatrix::from_trusted(HermitianMatrix::from_real_diagonal(&[p, p, (1.0 - 2.0 * b) / 3.0]));
    Ok((rho, example_hamiltonian()))
}

pub fn example_hamiltonian() -> Hamiltonian {
    let m = SquareComplexMatrix::from_real_rows(&[
        vec![1.0, 0.0, 1.0],
        vec![0.0, -1.0, 0.0],
        vec![1.0, 0.0, 1.0],
    ])
    .expect("static matrix");
    Hamiltonian::new(HermitianMatrix::from_trusted(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = std::f64::consts::E;

    fn two_level() -> Hamiltonian {
        Hamiltonian::new(HermitianMatrix::from_real_diagonal(&[1.0, -1.0]))
    }

    #[test]
    fn beta_zero_is_maximally_mixed() {
        let sigma = gibbs_state(&example_hamiltonian(), 0.0).unwrap();
        let d = sigma.matrix().max_abs_diff(DensityMatrix::maximally_mixed(3).matrix()).unwrap();
        assert!(d < 1e-15);
        assert!((log_partition(&example_hamiltonian(), 0.0).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn low_temperature_concentrates_on_ground_state() {
        let sigma = gibbs_state(&example_hamiltonian(), 50.0).unwrap();
        assert!(sigma.matrix()[(1, 1)].re >= 1.0 - 1e-20);
        assert!(sigma.matrix()[(0, 0)].re < 1e-21);
    }

    #[test]
    fn two_level_gibbs() {
        let sigma = gibbs_state(&two_level(), 1.0).unwrap();
        let z = E + 1.0 / E;
        assert!((sigma.matrix()[(0, 0)].re - (1.0 / E) / z).abs() < 1e-15);
        assert!((sigma.matrix()[(1, 1)].re - E / z).abs() < 1e-15);
        assert!((sigma.matrix()[(0, 0)].re - 0.11920292202211756).abs() < 1e-15);
        let u = mean_energy(&sigma, &two_level()).unwrap();
        assert!((u + 1f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn log_partition_values() {
        // spectrum {-1, 0, 2}
        let h = example_hamiltonian();
        let want_m1 = (1.0 / E + 1.0 + E * E).ln();
        let want_p1 = (E + 1.0 + 1.0 / (E * E)).ln();
        assert!((log_partition(&h, -1.0).unwrap() - want_m1).abs() < 1e-14);
        assert!((log_partition(&h, 1.0).unwrap() - want_p1).abs() < 1e-14);
        assert!((want_m1 - 2.169846019556286).abs() < 1e-14);
        assert!((want_p1 - 1.3490122167681864).abs() < 1e-14);
    }

    #[test]
    fn overflow_guard() {
        let h = example_hamiltonian();
        assert!(matches!(gibbs_state(&h, 300.0), Err(Error::OverflowRisk { .. })));
        assert!(gibbs_state(&h, 200.0).is_ok());
        assert_eq!(gibbs_state(&h, f64::NAN), Err(Error::NonFiniteBeta));
    }

    #[test]
    fn example_mean_energy() {
        let (rho, h) = example_family(0.0).unwrap();
        assert!((mean_energy(&rho, &h).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let (rho, h) = example_family(0.5).unwrap();
        assert_eq!(mean_energy(&rho, &h).unwrap(), 0.0);
        for b in [-1.0, -0.3, 0.2] {
            let (rho, h) = example_family(b).unwrap();
            assert!((mean_energy(&rho, &h).unwrap() - (1.0 - 2.0 * b) / 3.0).abs() < 1e-15);
        }
        assert!(matches!(
            mean_energy(&rho, &two_level()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn relative_entropy_cases() {
        let pure = DensityMatrix::from_probabilities(&[1.0, 0.0]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((relative_entropy(&pure, &mixed).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(relative_entropy(&mixed, &pure).unwrap(), f64::INFINITY);
        assert_eq!(relative_entropy(&mixed, &mixed).unwrap(), 0.0);
        assert_eq!(relative_entropy(&pure, &pure).unwrap(), 0.0);
        assert!(matches!(
            relative_entropy(&pure, &DensityMatrix::maximally_mixed(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn report_at_beta_zero_saturates_for_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(3);
        let r = entropy_energy_report(&rho, &example_hamiltonian(), 0.0).unwrap();
        assert!((r.s - 3f64.ln()).abs() < 1e-15);
        assert!((r.rhs - 3f64.ln()).abs() < 1e-15);
        assert!(r.margin.abs() < 1e-12 && r.holds);
    }

    #[test]
    fn energetic_form_at_example_state() {
        let (rho, h) = example_family(0.0).unwrap();
        let r = energetic_report(&rho, &h).unwrap();
        assert_eq!(r.beta, -1.0);
        // -1/3 + ln(e^-1 + 1 + e^2)
        assert!((r.rhs - 1.8365126862229523).abs() < 1e-13);
        assert!(r.holds);
        assert!((r.relative_entropy_to_gibbs - r.margin).abs() < 1e-12);
    }

    #[test]
    fn gibbs_state_saturates_its_bound() {
        let h = example_hamiltonian();
        for beta in [-2.0, -0.5, 0.3, 1.0, 4.0] {
            let sigma = gibbs_state(&h, beta).unwrap();
            let r = entropy_energy_report(&sigma, &h, beta).unwrap();
            assert!(r.margin.abs() <= 1e-9, "beta {beta}: {}", r.margin);
        }
    }

    #[test]
    fn support_violation_gives_infinite_relative_entropy() {
        // sigma(30) has population e^-90 on E = 2, below the support tolerance
        let r = entropy_energy_report(&DensityMatrix::maximally_mixed(3), &example_hamiltonian(), 30.0).unwrap();
        assert_eq!(r.relative_entropy_to_gibbs, f64::INFINITY);
        assert!(r.holds);
    }

    #[test]
    fn closed_form_spectrum() {
        let (e1, e2, e3) = special_qutrit_spectrum(&example_hamiltonian()).unwrap();
        assert_eq!((e1, e2, e3), (-1.0, 0.0, 2.0));

        let diag = Hamiltonian::new(HermitianMatrix::from_real_diagonal(&[4.0, -2.0, 1.5]));
        assert_eq!(special_qutrit_spectrum(&diag).unwrap(), (-2.0, 1.5, 4.0));

        let dense = Hamiltonian::from_matrix(
            &SquareComplexMatrix::from_real_rows(&[vec![1., 0.5, 0.], vec![0.5, 0., 0.], vec![0., 0., 2.]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            special_qutrit_spectrum(&dense),
            Err(Error::SparsityViolated { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn example_family_boundaries() {
        let (rho, _) = example_family(0.0).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityMatrix::maximally_mixed(3).matrix()).unwrap() < 1e-16);
        let (rho, _) = example_family(0.5).unwrap();
        assert_eq!(rho.matrix(), &SquareComplexMatrix::from_diagonal(&[0.5, 0.5, 0.0]));
        let (rho, _) = example_family(-1.0).unwrap();
        assert_eq!(rho.matrix(), &SquareComplexMatrix::from_diagonal(&[0.0, 0.0, 1.0]));
        assert!(matches!(example_family(0.51), Err(Error::ParamOutOfRange { .. })));
        assert!(matches!(example_family(-1.01), Err(Error::ParamOutOfRange { .. })));
    }
}
