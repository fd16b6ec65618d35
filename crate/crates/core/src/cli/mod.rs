//! The `slitlab` command-line front end.
//!
//! Exit codes: 0 success, 1 configuration or usage error, 2 I/O error,
//! 3 verification failure.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use thiserror::Error;

use crate::amplitude::momentum_amplitude;
use crate::distribution::fit::{fit_slit_parameters, FitKind};
use crate::distribution::fringes::{find_fringes, interference_orders};
use crate::distribution::{angular_distribution, reduced_variables, Distribution};
use crate::grid;
use crate::oracle::{compare_with, normalization_integral};
use crate::slit::{canonical_system, Figure, SlitKind, SlitSystem};
use crate::SlitError;
use config::{parse_config, ConfigError, RunConfig};
use output::{read_csv, render_svg, write_atomic, write_csv};

/// Fringe threshold relative to the peak.
pub const DEFAULT_THRESHOLD: f64 = 1e-6;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
const MIN_ANALYSIS_SAMPLES: usize = 101;

#[derive(Debug, Parser)]
#[command(name = "slitlab", version, about = "Momentum distributions of particles scattered by slits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the angular distribution of a configured system as CSV.
    Simulate {
        /// Slit system config file
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
        /// Output CSV path; stdout when omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Regenerate one of the reference figures as CSV + SVG.
    Reproduce {
        /// Figure number, 2 to 5 (`fig4` also accepted)
        #[arg(long = "figure")]
        figure: Figure,
        /// Directory receiving fig<N>.csv and fig<N>.svg.
        #[arg(short = 'o', long = "output", default_value = ".")]
        output: PathBuf,
    },
    /// Check closed forms against the numerical oracle.
    Verify {
        /// Slit system config file
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
        /// Maximum relative error against the oracle
        #[arg(long = "tol", default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Adds this offset to the closed-form amplitude (self-test of the
        /// failure path).
        #[arg(long = "corrupt-closed-form", hide = true)]
        corrupt: Option<f64>,
    },
    /// Report fringe extrema and visibility.
    Analyze {
        /// Slit system config file
        #[arg(short = 'c', long = "config")]
        config: PathBuf,
        /// Maxima below this fraction of the peak are ignored
        #[arg(long = "threshold", default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Fit slit width (and separation) to a CSV written by `simulate`.
    Fit {
        /// CSV file with header `theta_rad,sin_theta,k,P`
        csv: PathBuf,
        /// `single` or `double_finite`
        #[arg(long = "kind")]
        kind: FitKind,
        /// The CSV was produced with `jacobian on`.
        #[arg(long)]
        jacobian: bool,
        /// The CSV was produced with `paper_literal on`.
        #[arg(long = "paper-literal")]
        paper_literal: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error("{0}")]
    Model(#[from] SlitError),
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("verification failed")]
    Verification,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Model(_) | CliError::Parse { .. } => 1,
            CliError::Io { .. } => 2,
            CliError::Verification => 3,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                let _ = writeln!(err, "error: {e}");
            } else {
                let _ = writeln!(err, "{e}");
            }
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Simulate { config, output } => cmd_simulate(&load_config(&config)?, output.as_deref(), out),
        Command::Reproduce { figure, output } => cmd_reproduce(figure, &output, out),
        Command::Verify { config, tol, corrupt } => cmd_verify(&load_config(&config)?, tol, corrupt, out),
        Command::Analyze { config, threshold } => cmd_analyze(&load_config(&config)?, threshold, out),
        Command::Fit { csv, kind, jacobian, paper_literal } => cmd_fit(&csv, kind, jacobian, paper_literal, out),
    }
}

fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_config(&text).map_err(|source| CliError::Config { path: path.into(), source })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    write_atomic(path, contents.as_bytes()).map_err(|source| CliError::Io { path: path.into(), source })
}

fn simulate(cfg: &RunConfig) -> Result<Distribution, CliError> {
    Ok(angular_distribution(&cfg.system, cfg.samples, cfg.jacobian, cfg.paper_literal)?)
}

pub fn cmd_simulate(cfg: &RunConfig, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let csv = write_csv(&simulate(cfg)?);
    match output {
        Some(path) => write_file(path, &csv),
        None => emit(out, &csv),
    }
}

pub fn cmd_reproduce(figure: Figure, dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let sys = canonical_system(figure);
    let dist = angular_distribution(&sys, config::DEFAULT_SAMPLES, false, false)?;
    let n = figure.number();
    let csv_path = dir.join(format!("fig{n}.csv"));
    let svg_path = dir.join(format!("fig{n}.svg"));
    write_file(&csv_path, &write_csv(&dist))?;
    write_file(&svg_path, &render_svg(&dist, &figure_title(figure)))?;

    let fringes = find_fringes(&dist, DEFAULT_THRESHOLD)?;
    let mut text = format!(
        "figure {n}: {sys}\nwrote {}\nwrote {}\nlocal maxima: {}\n",
        csv_path.display(),
        svg_path.display(),
        fringes.max_count()
    );
    if let Ok(orders) = interference_orders(&sys, DEFAULT_THRESHOLD) {
        let visible: Vec<String> = orders.iter().filter(|o| o.visible).map(|o| o.order.to_string()).collect();
        text.push_str(&format!("visible interference maxima: {} (orders {})\n", visible.len(), visible.join(" ")));
    }
    emit(out, &text)
}

fn figure_title(figure: Figure) -> String {
    match figure {
        Figure::Fig2 => "Double narrow slit, d = 4λ".into(),
        Figure::Fig3 => "Single slit, a = 4λ".into(),
        Figure::Fig4 => "Double slit, a = λ, d = 4λ".into(),
        Figure::Fig5 => "Double slit, a = 2λ, d = 4λ".into(),
    }
}

pub fn cmd_verify(cfg: &RunConfig, tol: f64, corrupt: Option<f64>, out: &mut dyn Write) -> Result<(), CliError> {
    let sys = &cfg.system;
    let p = sys.momentum();
    let ks = grid::linspace(-4.0 * p, 4.0 * p, cfg.samples);
    let offset = Complex64::new(corrupt.unwrap_or(0.0), 0.0);
    let report = compare_with(sys, &ks, tol, |k| momentum_amplitude(sys, k) + offset);
    let oracle = match sys.kind() {
        SlitKind::Narrow => "direct phase sum",
        SlitKind::Finite => "Gauss-Legendre quadrature",
    };
    let mut text = format!(
        "system: {sys}\noracle: {oracle}\npoints: {}\nmax_abs_err: {:e}\nmax_rel_err: {:e}\nworst_k: {}\ntolerance: {:e}\namplitude check: {}\n",
        report.n_points,
        report.max_abs_err,
        report.max_rel_err,
        report.worst_k,
        report.tolerance,
        pass_fail(report.pass),
    );
    let mut pass = report.pass;

    if sys.kind() == SlitKind::Finite {
        let (k_max, panels) = normalization_budget(sys);
        let norm = normalization_integral(sys, k_max, panels, cfg.paper_literal)?;
        let ok = norm.brackets_one(1e-9) && (1.0 - norm.value).abs() < 1e-3;
        text.push_str(&format!(
            "normalization over |k| <= {k_max}: {} (tail bound {:e}, {panels} panels): {}\n",
            norm.value,
            norm.tail_bound,
            pass_fail(ok)
        ));
        pass &= ok;
    } else {
        text.push_str("normalization: skipped (delta states are not normalizable)\n");
    }
    emit(out, &text)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

/// `K = 10⁴ / a_min`, with enough Simpson panels for ≥ 16 per period of
/// the fastest oscillation across the apparatus.
fn normalization_budget(sys: &SlitSystem) -> (f64, usize) {
    let a_min = sys.slits().iter().map(|s| s.width).fold(f64::INFINITY, f64::min);
    let lo = sys.slits().iter().map(|s| s.center - 0.5 * s.width).fold(f64::INFINITY, f64::min);
    let hi = sys.slits().iter().map(|s| s.center + 0.5 * s.width).fold(f64::NEG_INFINITY, f64::max);
    let k_max = 1e4 / a_min;
    let extent = (hi - lo).max(a_min);
    let needed = (2.0 * k_max * extent * 16.0 / (2.0 * std::f64::consts::PI)).ceil() as usize;
    let panels = needed.clamp(1_000_000, 20_000_000);
    (k_max, panels + panels % 2)
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_analyze(cfg: &RunConfig, threshold: f64, out: &mut dyn Write) -> Result<(), CliError> {
    if cfg.samples < MIN_ANALYSIS_SAMPLES {
        return Err(CliError::Usage(format!(
            "fringe analysis needs at least {MIN_ANALYSIS_SAMPLES} samples, config has {}",
            cfg.samples
        )));
    }
    let sys = &cfg.system;
    let dist = simulate(cfg)?;
    let report = find_fringes(&dist, threshold)?;
    let width = sys.common_width().filter(|_| sys.kind() == SlitKind::Finite);
    let pitch = sys.uniform_pitch();

    let mut text = format!("system: {sys}\n");
    let describe = |text: &mut String, e: &crate::distribution::fringes::Extremum| {
        text.push_str(&format!("  theta={:.9} sin_theta={:.9} P={:.9e}", e.position, e.coordinate, e.value));
        if sys.kind() == SlitKind::Finite {
            let a = width.unwrap_or(0.0);
            let d = pitch.unwrap_or(0.0);
            if let Ok(r) = reduced_variables(e.position, a, d, sys.wavelength()) {
                if pitch.is_some() {
                    text.push_str(&format!(" phi={:.9}", r.phi));
                }
                if width.is_some() {
                    text.push_str(&format!(" alpha={:.9}", r.alpha));
                }
            }
        }
        text.push('\n');
    };
    text.push_str(&format!("maxima: {}\n", report.max_count()));
    for e in &report.maxima {
        describe(&mut text, e);
    }
    text.push_str(&format!("minima: {}\n", report.min_count()));
    for e in &report.minima {
        describe(&mut text, e);
    }
    text.push_str(&format!("visibility: {:.6}\n", report.visibility));

    if let (Some(d), Ok(orders)) = (pitch, interference_orders(sys, threshold)) {
        let visible = orders.iter().filter(|o| o.visible).count();
        text.push_str(&format!("interference orders (d = {d}): {} visible of {}\n", visible, orders.len()));
        let central = orders.iter().find(|o| o.order == 0).map(|o| o.value);
        for o in &orders {
            text.push_str(&format!(
                "  n={:+} sin_theta={:.6} P={:.9e}{}{}\n",
                o.order,
                o.sin_theta,
                o.value,
                central
                    .filter(|_| o.order != 0 && o.value > 0.0)
                    .map(|c| format!(" central/P={:.9}", c / o.value))
                    .unwrap_or_default(),
                if o.visible { "" } else { " suppressed" }
            ));
        }
    }
    emit(out, &text)
}

pub fn cmd_fit(path: &Path, kind: FitKind, jacobian: bool, paper_literal: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let dist = read_csv(&text, jacobian, paper_literal)
        .map_err(|e| CliError::Parse { path: path.into(), message: e.to_string() })?;
    let (fit, converged) = match fit_slit_parameters(&dist, kind) {
        Ok(fit) => (fit, true),
        Err(SlitError::NoConvergence { residual, a, d, iterations }) => {
            (crate::FitResult { a, d, residual, sweeps: iterations }, false)
        }
        Err(e) => return Err(e.into()),
    };
    let mut report = format!("a: {}\n", fit.a);
    if let Some(d) = fit.d {
        report.push_str(&format!("d: {d}\n"));
    }
    report.push_str(&format!("residual: {:e}\nsweeps: {}\nconverged: {converged}\n", fit.residual, fit.sweeps));
    emit(out, &report)?;
    if converged {
        Ok(())
    } else {
        Err(SlitError::NoConvergence { iterations: fit.sweeps, residual: fit.residual, a: fit.a, d: fit.d }.into())
    }
}
