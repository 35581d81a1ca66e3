use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qudit_entropy::format::fmt_sig;
use qudit_entropy::sweep::{to_csv, to_json, DEFAULT_BETAS};
use qudit_entropy::{
    compare_bounds, density_diagnostics, parse_beta_list, run_sweep, validate_density, ComparisonReport, Error,
    Hamiltonian, StateFileDocument, SweepConfig, STATE_TOL,
};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "qudit-entropy", version, about = "Entropic and entropy-energy inequality checks for qudit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a state file holds a density matrix.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = STATE_TOL)]
        tol: f64,
        /// Symmetrize, clamp negative eigenvalues and renormalize instead of rejecting.
        #[arg(long)]
        fix: bool,
    },
    /// Subadditivity and entropy-energy bounds for one state.
    Report {
        state: PathBuf,
        /// Hamiltonian file; without it only the subadditivity section is produced.
        #[arg(long)]
        ham: Option<PathBuf>,
        /// Comma-separated inverse temperatures.
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the example qutrit family over b.
    Sweep {
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        b_min: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        b_max: f64,
        #[arg(long, default_value_t = 151)]
        steps: usize,
        #[arg(long, default_value = DEFAULT_BETAS, allow_hyphen_values = true)]
        betas: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Exit status 1: the input was read but a state or inequality check failed.
/// Exit status 2: the input could not be used at all.
enum Failure {
    Check(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file, tol, fix } => cmd_validate(&file, tol, fix),
        Command::Report { state, ham, beta, json } => cmd_report(&state, ham.as_deref(), &beta, json),
        Command::Sweep {
            b_min,
            b_max,
            steps,
            betas,
            out,
            format,
        } => cmd_sweep(b_min, b_max, steps, &betas, out.as_deref(), format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_document(path: &Path) -> anyhow::Result<StateFileDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    StateFileDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn g6(x: f64) -> String {
    fmt_sig(x, 6)
}

fn cmd_validate(path: &Path, tol: f64, fix: bool) -> Result<(), Failure> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(anyhow!("--tol must be positive").into());
    }
    let doc = read_document(path)?;
    let m = doc.to_matrix().map_err(anyhow::Error::from)?;
    let diagnostics = density_diagnostics(&m).map_err(anyhow::Error::from)?;

    println!("file {}", path.display());
    println!("dim {}", m.dim());
    println!("hermiticity residual {}", g6(diagnostics.hermiticity_residual));
    println!("trace deviation {}", g6(diagnostics.trace_deviation));
    println!("min eigenvalue {}", g6(diagnostics.min_eigenvalue));

    match validate_density(&m, tol, fix) {
        Ok(v) => {
            if let Some(distance) = v.diagnostics.repair_distance {
                println!("repair distance {}", g6(distance));
                println!("status repaired");
                println!("{}", StateFileDocument::from_matrix(v.state.matrix(), doc.label).to_json());
            } else {
                println!("status valid");
            }
            Ok(())
        }
        Err(e @ (Error::NotHermitian { .. } | Error::TraceNotOne { .. } | Error::NotPositive { .. })) => {
            println!("{e}");
            println!("status invalid");
            Err(Failure::Check("validation failed".into()))
        }
        Err(e) => Err(anyhow::Error::from(e).into()),
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    state: StateFileDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    hamiltonian: Option<StateFileDocument>,
    #[serde(flatten)]
    comparison: &'a ComparisonReport,
}

fn cmd_report(state: &Path, ham: Option<&Path>, beta: &str, json: bool) -> Result<(), Failure> {
    let doc = read_document(state)?;
    let m = doc.to_matrix().map_err(anyhow::Error::from)?;
    let rho = match validate_density(&m, STATE_TOL, false) {
        Ok(v) => v.state,
        Err(e @ (Error::NotHermitian { .. } | Error::TraceNotOne { .. } | Error::NotPositive { .. })) => {
            return Err(Failure::Check(format!("{}: {e}", state.display())));
        }
        Err(e) => return Err(anyhow::Error::from(e).into()),
    };

    let hamiltonian = match ham {
        Some(path) => {
            let hdoc = read_document(path)?;
            let h = hdoc
                .to_matrix()
                .and_then(|hm| Hamiltonian::from_matrix(&hm))
                .with_context(|| format!("hamiltonian {}", path.display()))?;
            Some((hdoc, h))
        }
        None => None,
    };
    let betas = parse_beta_list(beta).context("--beta")?;
    let comparison = compare_bounds(&rho, hamiltonian.as_ref().map(|(_, h)| h), &betas)
        .context("evaluating bounds")?;

    if json {
        let out = ReportDocument {
            state: StateFileDocument::from_matrix(rho.matrix(), doc.label.clone()),
            hamiltonian: hamiltonian.map(|(d, _)| d),
            comparison: &comparison,
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("report serializes"));
    } else {
        print_report_text(&doc, state, &comparison);
    }

    if comparison.all_hold() {
        Ok(())
    } else {
        Err(Failure::Check("inequality violated".into()))
    }
}

fn holds(flag: bool) -> &'static str {
    if flag {
        "holds"
    } else {
        "VIOLATED"
    }
}

fn print_report_text(doc: &StateFileDocument, path: &Path, r: &ComparisonReport) {
    let name = doc.label.clone().unwrap_or_else(|| path.display().to_string());
    println!("state {name} (dim {})", doc.dim);
    let s = &r.subadditivity;
    println!(
        "subadditivity S {} S1 {} S2 {} Iq {} cher_rhs {} margin {} {}",
        g6(s.s),
        g6(s.s1),
        g6(s.s2),
        g6(s.iq),
        g6(s.rhs),
        g6(s.margin),
        holds(s.holds)
    );
    for t in &r.thermal {
        let t_r = &t.report;
        println!(
            "thermal beta {} S {} meanH {} lnZ {} rhs {} margin {} D(rho||gibbs) {} {}",
            t.beta_label,
            g6(t_r.s),
            g6(t_r.mean_h),
            g6(t_r.ln_z),
            g6(t_r.rhs),
            g6(t_r.margin),
            g6(t_r.relative_entropy_to_gibbs),
            holds(t_r.holds)
        );
    }
    if let Some(t) = &r.tighter {
        match &t.beta {
            Some(beta) => println!("tighter thermal (beta {beta}) rhs {}", g6(t.rhs)),
            None => println!("tighter entropic rhs {}", g6(t.rhs)),
        }
    }
}

fn cmd_sweep(
    b_min: f64,
    b_max: f64,
    steps: usize,
    betas: &str,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let config = SweepConfig {
        b_min,
        b_max,
        steps,
        betas: parse_beta_list(betas).context("--betas")?,
    };
    let rows = match run_sweep(&config) {
        Ok(rows) => rows,
        Err(e @ Error::InequalityViolated(_)) => return Err(Failure::Check(e.to_string())),
        Err(e) => return Err(anyhow::Error::from(e).into()),
    };
    let text = match format {
        Format::Csv => to_csv(&rows, &config.betas),
        Format::Json => to_json(&rows),
    };
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout")?,
    }
    Ok(())
}
