//! Qubit portrait of a qudit: zero-padding to a composite dimension, reduced
//! states of the two artificial subsystems, and the subadditivity check.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::eigen::SUPPORT_TOL;
use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, SquareComplexMatrix};

/// Pass threshold for inequality margins.
pub const MARGIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduced states of the two artificial subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct PortraitPair {
    pub rho1: DensityMatrix,
    pub rho2: DensityMatrix,
    pub bipartition: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubadditivityReport {
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "Iq")]
    pub iq: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
}

/// Places `rho` in the top-left block of a `target_dim` matrix, zeros elsewhere.
pub fn zero_pad_embed(rho: &DensityMatrix, target_dim: usize) -> Result<DensityMatrix> {
    let dim = rho.dim();
    if target_dim < dim {
        return Err(Error::DimensionShrink {
            from: dim,
            to: target_dim,
        });
    }
    if target_dim == dim {
        return Ok(rho.clone());
    }
    let mut out = SquareComplexMatrix::zeros(target_dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = rho.matrix()[(i, j)];
        }
    }
    Ok(DensityMatrix::from_trusted(HermitianMatrix::from_trusted(out)))
}

/// Partial trace over one factor of `n1 x n2`, with composite index
/// `(a, b) -> a * n2 + b`. `Subsystem::First` keeps the first factor:
/// `rho1[a][a'] = sum_b rho[(a,b)][(a',b)]`.
pub fn partial_trace(rho: &DensityMatrix, n1: usize, n2: usize, keep: Subsystem) -> Result<DensityMatrix> {
    let dim = rho.dim();
    if n1 == 0 || n2 == 0 || n1 * n2 != dim {
        return Err(Error::DimensionNotFactorizable { dim, n1, n2 });
    }
    let m = rho.matrix();
    let out = match keep {
        Subsystem::First => {
            let mut r = SquareComplexMatrix::zeros(n1);
            for a in 0..n1 {
                for ap in 0..n1 {
                    for b in 0..n2 {
                        r[(a, ap)] += m[(a * n2 + b, ap * n2 + b)];
                    }
                }
            }
            r
        }
        Subsystem::Second => {
            let mut r = SquareComplexMatrix::zeros(n2);
            for b in 0..n2 {
                for bp in 0..n2 {
                    for a in 0..n1 {
                        r[(b, bp)] += m[(a * n2 + b, a * n2 + bp)];
                    }
                }
            }
            r
        }
    };
    Ok(DensityMatrix::from_trusted(HermitianMatrix::from_trusted(out)))
}

/// `-sum lambda ln lambda` in nats; eigenvalues at or below the support
/// tolerance contribute nothing.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let decomposition = rho.eigh()?;
    Ok(entropy_of_spectrum(&decomposition.eigenvalues))
}

pub(crate) fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l > SUPPORT_TOL)
        .map(|&l| -l * l.ln())
        .sum();
    s.max(0.0)
}

/// Bipartition used by the portrait: `(2, ceil(d/2))`.
pub fn portrait_bipartition(dim: usize) -> (usize, usize) {
    (2, dim.div_ceil(2))
}

/// Pads to `2 * ceil(d/2)` and traces out each factor of the `2 x ceil(d/2)` split.
pub fn qubit_portrait(rho: &DensityMatrix) -> Result<PortraitPair> {
    let (n1, n2) = portrait_bipartition(rho.dim());
    let padded = zero_pad_embed(rho, n1 * n2)?;
    Ok(PortraitPair {
        rho1: partial_trace(&padded, n1, n2, Subsystem::First)?,
        rho2: partial_trace(&padded, n1, n2, Subsystem::Second)?,
        bipartition: (n1, n2),
    })
}

pub fn subadditivity_report(rho: &DensityMatrix) -> Result<SubadditivityReport> {
    let pair = qubit_portrait(rho)?;
    let s = von_neumann_entropy(rho)?;
    let s1 = von_neumann_entropy(&pair.rho1)?;
    let s2 = von_neumann_entropy(&pair.rho2)?;
    let rhs = s1 + s2;
    let margin = rhs - s;
    Ok(SubadditivityReport {
        s,
        s1,
        s2,
        iq: margin,
        rhs,
        holds: margin >= -MARGIN_TOL,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const LN2: f64 = std::f64::consts::LN_2;

    fn diag_state(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_probabilities(p).unwrap()
    }

    fn qutrit_with_coherences() -> DensityMatrix {
        let c = Complex64::new;
        let m = SquareComplexMatrix::from_row_major(
            3,
            vec![
                c(0.5, 0.0),
                c(0.1, 0.05),
                c(0.2, -0.1),
                c(0.1, -0.05),
                c(0.3, 0.0),
                c(0.0, 0.02),
                c(0.2, 0.1),
                c(0.0, -0.02),
                c(0.2, 0.0),
            ],
        )
        .unwrap();
        crate::density::validate_density(&m, 1e-8, false).unwrap().state
    }

    #[test]
    fn padding_adds_zero_row_and_column() {
        let rho = qutrit_with_coherences();
        let p = zero_pad_embed(&rho, 4).unwrap();
        for i in 0..4 {
            assert_eq!(p.matrix()[(i, 3)], Complex64::new(0., 0.));
            assert_eq!(p.matrix()[(3, i)], Complex64::new(0., 0.));
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.matrix()[(i, j)], rho.matrix()[(i, j)]);
            }
        }
        let spectrum = p.eigh().unwrap().eigenvalues;
        assert!(spectrum[0].abs() < 1e-15);
        assert_eq!(zero_pad_embed(&rho, 3).unwrap(), rho);
        assert_eq!(
            zero_pad_embed(&rho, 2),
            Err(Error::DimensionShrink { from: 3, to: 2 })
        );
    }

    #[test]
    fn reduced_blocks_of_padded_qutrit() {
        let rho = qutrit_with_coherences();
        let r = rho.matrix();
        let pair = qubit_portrait(&rho).unwrap();
        assert_eq!(pair.bipartition, (2, 2));
        let r1 = pair.rho1.matrix();
        assert_eq!(r1[(0, 0)], r[(0, 0)] + r[(1, 1)]);
        assert_eq!(r1[(0, 1)], r[(0, 2)]);
        assert_eq!(r1[(1, 0)], r[(2, 0)]);
        assert_eq!(r1[(1, 1)], r[(2, 2)]);
        let r2 = pair.rho2.matrix();
        assert_eq!(r2[(0, 0)], r[(0, 0)] + r[(2, 2)]);
        assert_eq!(r2[(0, 1)], r[(0, 1)]);
        assert_eq!(r2[(1, 0)], r[(1, 0)]);
        assert_eq!(r2[(1, 1)], r[(1, 1)]);
    }

    #[test]
    fn maximally_mixed_reduces_to_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(4);
        for keep in [Subsystem::First, Subsystem::Second] {
            let r = partial_trace(&rho, 2, 2, keep).unwrap();
            assert_eq!(r, DensityMatrix::maximally_mixed(2));
        }
        assert_eq!(
            partial_trace(&rho, 3, 2, Subsystem::First),
            Err(Error::DimensionNotFactorizable { dim: 4, n1: 3, n2: 2 })
        );
    }

    #[test]
    fn asymmetric_bipartition() {
        // product state diag(0.25, 0.75) x diag(0.1, 0.2, 0.7)
        let a = [0.25, 0.75];
        let b = [0.1, 0.2, 0.7];
        let p: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let rho = diag_state(&p);
        let r1 = partial_trace(&rho, 2, 3, Subsystem::First).unwrap();
        let r2 = partial_trace(&rho, 2, 3, Subsystem::Second).unwrap();
        for (i, w) in a.iter().enumerate() {
            assert!((r1.matrix()[(i, i)].re - w).abs() < 1e-15);
        }
        for (i, w) in b.iter().enumerate() {
            assert!((r2.matrix()[(i, i)].re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn entropy_known_values() {
        let s = von_neumann_entropy(&DensityMatrix::maximally_mixed(3)).unwrap();
        assert!((s - 3f64.ln()).abs() < 1e-15);
        assert_eq!(von_neumann_entropy(&diag_state(&[1., 0., 0.])).unwrap(), 0.0);
        let s = von_neumann_entropy(&diag_state(&[0.5, 0.5, 0.])).unwrap();
        assert!((s - LN2).abs() < 1e-15);
    }

    #[test]
    fn portraits_of_diagonal_states() {
        let pair = qubit_portrait(&DensityMatrix::maximally_mixed(3)).unwrap();
        for r in [&pair.rho1, &pair.rho2] {
            assert!((r.matrix()[(0, 0)].re - 2. / 3.).abs() < 1e-15);
            assert!((r.matrix()[(1, 1)].re - 1. / 3.).abs() < 1e-15);
        }
        let pair = qubit_portrait(&diag_state(&[1., 0., 0.])).unwrap();
        assert_eq!(pair.rho1.matrix(), &SquareComplexMatrix::from_diagonal(&[1., 0.]));
        assert_eq!(pair.rho2.matrix(), &SquareComplexMatrix::from_diagonal(&[1., 0.]));
        let pair = qubit_portrait(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert_eq!(pair.bipartition, (2, 2));
        let pair = qubit_portrait(&DensityMatrix::maximally_mixed(5)).unwrap();
        assert_eq!(pair.bipartition, (2, 3));
    }

    #[test]
    fn subadditivity_known_values() {
        let r = subadditivity_report(&DensityMatrix::maximally_mixed(3)).unwrap();
        assert!((r.s - 1.0986122886681098).abs() < 1e-12);
        assert!((r.s1 - 0.6365141682948128).abs() < 1e-12);
        assert!((r.s2 - r.s1).abs() < 1e-15);
        assert!((r.rhs - 1.2730283365896257).abs() < 1e-12);
        assert!((r.iq - 0.174_416_047_921_516).abs() < 1e-12);
        assert!(r.holds);

        let r = subadditivity_report(&diag_state(&[0.5, 0.5, 0.])).unwrap();
        assert!((r.s - LN2).abs() < 1e-15);
        assert_eq!(r.s1, 0.0);
        assert!((r.s2 - LN2).abs() < 1e-15);
        assert!(r.margin.abs() < 1e-15 && r.holds);

        let r = subadditivity_report(&diag_state(&[0., 0., 1.])).unwrap();
        assert_eq!((r.s, r.rhs, r.margin), (0.0, 0.0, 0.0));
    }
}
