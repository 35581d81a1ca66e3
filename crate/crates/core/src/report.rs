//! Side-by-side comparison of the subadditivity bound and the thermal bounds
//! for a single state.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::portrait::{subadditivity_report, SubadditivityReport};
use crate::sweep::Beta;
use crate::thermal::{entropy_energy_report, Hamiltonian, ThermalBoundReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Entropic,
    Thermal,
}

/// The smaller of the two upper bounds on `S`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tighter {
    pub bound: BoundKind,
    pub rhs: f64,
    /// Set when the thermal bound wins.
    pub beta: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalEntry {
    pub beta_label: String,
    #[serde(flatten)]
    pub report: ThermalBoundReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub subadditivity: SubadditivityReport,
    pub thermal: Vec<ThermalEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tighter: Option<Tighter>,
}

impl ComparisonReport {
    /// Every checked inequality holds.
    pub fn all_hold(&self) -> bool {
        self.subadditivity.holds && self.thermal.iter().all(|t| t.report.holds)
    }
}

/// Subadditivity report for `rho` plus, when a Hamiltonian is given, one
/// thermal report per `beta` and the tighter of the two bound families.
pub fn compare_bounds(rho: &DensityMatrix, h: Option<&Hamiltonian>, betas: &[Beta]) -> Result<ComparisonReport> {
    let subadditivity = subadditivity_report(rho)?;
    let Some(h) = h else {
        return Ok(ComparisonReport {
            subadditivity,
            thermal: Vec::new(),
            tighter: None,
        });
    };
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    let thermal = betas
        .iter()
        .map(|beta| {
            Ok(ThermalEntry {
                beta_label: beta.label.clone(),
                report: entropy_energy_report(rho, h, beta.value)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let best = thermal
        .iter()
        .min_by(|a, b| a.report.rhs.total_cmp(&b.report.rhs));
    let tighter = match best {
        Some(t) if t.report.rhs < subadditivity.rhs => Tighter {
            bound: BoundKind::Thermal,
            rhs: t.report.rhs,
            beta: Some(t.beta_label.clone()),
        },
        _ => Tighter {
            bound: BoundKind::Entropic,
            rhs: subadditivity.rhs,
            beta: None,
        },
    };
    Ok(ComparisonReport {
        subadditivity,
        thermal,
        tighter: Some(tighter),
    })
}
