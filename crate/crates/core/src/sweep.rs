//! Parameter sweep of the example qutrit family: entropy, the portrait
//! (subadditivity) bound and the thermal bounds for a list of `beta` values.

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::portrait::{subadditivity_report, MARGIN_TOL};
use crate::thermal::{entropy_energy_report, example_family};

pub const CSV_SIGNIFICANT_DIGITS: usize = 9;
pub const DEFAULT_BETAS: &str = "-1,5,0.1";

/// A `beta` value together with its text as given by the user; the text is
/// what appears in output column names.
#[derive(Debug, Clone, PartialEq)]
pub struct Beta {
    pub label: String,
    pub value: f64,
}

impl Beta {
    pub fn new(value: f64) -> Self {
        Self {
            label: value.to_string(),
            value,
        }
    }
}

/// Parses a comma-separated list such as `-1,5,0.1`.
pub fn parse_beta_list(text: &str) -> Result<Vec<Beta>> {
    text.split(',')
        .map(str::trim)
        .map(|token| {
            let value: f64 = token
                .parse()
                .map_err(|_| Error::Parse(format!("invalid beta '{token}'")))?;
            if !value.is_finite() {
                return Err(Error::NonFiniteBeta);
            }
            Ok(Beta {
                label: token.to_string(),
                value,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub b_min: f64,
    pub b_max: f64,
    pub steps: usize,
    pub betas: Vec<Beta>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            b_min: -1.0,
            b_max: 0.5,
            steps: 151,
            betas: parse_beta_list(DEFAULT_BETAS).expect("static list"),
        }
    }
}

impl SweepConfig {
    /// Grid points `b_min + (b_max - b_min) * i / (steps - 1)`, endpoints exact.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let in_domain = |b: f64| (-1.0..=0.5).contains(&b);
        for (name, value) in [("b_min", self.b_min), ("b_max", self.b_max)] {
            if !in_domain(value) {
                return Err(Error::ParamOutOfRange {
                    name,
                    value,
                    min: -1.0,
                    max: 0.5,
                });
            }
        }
        if self.b_min > self.b_max {
            return Err(Error::ParamOutOfRange {
                name: "b_min",
                value: self.b_min,
                min: -1.0,
                max: self.b_max,
            });
        }
        if self.steps < 2 {
            return Err(Error::ParamOutOfRange {
                name: "steps",
                value: self.steps as f64,
                min: 2.0,
                max: f64::INFINITY,
            });
        }
        let span = self.b_max - self.b_min;
        let last = self.steps - 1;
        Ok((0..self.steps)
            .map(|i| {
                if i == last {
                    self.b_max
                } else {
                    (self.b_min + span * i as f64 / last as f64).clamp(self.b_min, self.b_max)
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub b: f64,
    pub s: f64,
    pub cher_rhs: f64,
    pub iq: f64,
    /// `(beta label, rhs)` in the configured order.
    pub thermal_rhs: Vec<(String, f64)>,
}

impl SweepRow {
    fn check(&self) -> Result<()> {
        if self.s > self.cher_rhs + MARGIN_TOL {
            return Err(Error::InequalityViolated(format!(
                "b = {}: S = {} exceeds subadditivity bound {}",
                self.b, self.s, self.cher_rhs
            )));
        }
        for (label, rhs) in &self.thermal_rhs {
            if self.s > rhs + MARGIN_TOL {
                return Err(Error::InequalityViolated(format!(
                    "b = {}: S = {} exceeds thermal bound {} at beta {}",
                    self.b, self.s, rhs, label
                )));
            }
        }
        Ok(())
    }
}

struct OrderedMap<'a>(&'a [(String, f64)]);

impl Serialize for OrderedMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for SweepRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SweepRow", 5)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("S", &self.s)?;
        st.serialize_field("cher_rhs", &self.cher_rhs)?;
        st.serialize_field("iq", &self.iq)?;
        st.serialize_field("thermal_rhs", &OrderedMap(&self.thermal_rhs))?;
        st.end()
    }
}

fn sweep_row(b: f64, betas: &[Beta]) -> Result<SweepRow> {
    let (rho, h) = example_family(b)?;
    let portrait = subadditivity_report(&rho)?;
    let thermal_rhs = betas
        .iter()
        .map(|beta| Ok((beta.label.clone(), entropy_energy_report(&rho, &h, beta.value)?.rhs)))
        .collect::<Result<Vec<_>>>()?;
    let row = SweepRow {
        b,
        s: portrait.s,
        cher_rhs: portrait.rhs,
        iq: portrait.iq,
        thermal_rhs,
    };
    row.check()?;
    Ok(row)
}

/// Rows in ascending `b`. Every row is checked against both inequalities;
/// a violation aborts the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let grid = config.grid()?;
    grid.par_iter().map(|&b| sweep_row(b, &config.betas)).collect()
}

pub fn csv_header(betas: &[Beta]) -> String {
    let mut header = String::from("b,S,cher_rhs,iq");
    for beta in betas {
        header.push_str(",rhs_beta_");
        header.push_str(&beta.label);
    }
    header
}

pub fn to_csv(rows: &[SweepRow], betas: &[Beta]) -> String {
    let f = |x: f64| fmt_sig(x, CSV_SIGNIFICANT_DIGITS);
    let mut out = csv_header(betas);
    out.push('\n');
    for row in rows {
        let mut fields = vec![f(row.b), f(row.s), f(row.cher_rhs), f(row.iq)];
        fields.extend(row.thermal_rhs.iter().map(|(_, v)| f(*v)));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(rows: &[SweepRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}
