//! Argument grammar and subcommand handlers.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use multipoint_core::example::{build_example_problem, ExampleSpec};
use multipoint_core::model::{make_grid, IntervalId, ProblemDefinition, TripleFunction};
use multipoint_core::oracle::{compare_spectra, det_sweep_eigenvalues, SweepConfig};
use multipoint_core::resolvent::apply_resolvent;
use multipoint_core::spectrum::assemble_report;
use multipoint_core::Complex64;

use crate::error::CliError;
use crate::problem_file::load_problem;
use crate::report::{spectrum_csv, spectrum_json, write_bytes, OracleCompareJson, ResolventJson};
use crate::samples::load_samples;
use crate::verify::run_verify;

#[derive(Debug, Parser)]
#[command(name = "multipoint", version, about = "Spectra and resolvents of multipoint first-order operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point spectrum in a window, with classification and optional norm probes.
    Spectrum(SpectrumArgs),
    /// Apply the resolvent at a non-real lambda to sampled functions.
    Resolvent(ResolventArgs),
    /// Boundary-value round trips and Green-identity defects.
    Verify(VerifyArgs),
    /// Compare the point spectrum against the determinant-sweep oracle.
    OracleCompare(OracleArgs),
    /// Report for the built-in sign-changing heat-type example.
    ExamplePde(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, required = true)]
    pub window: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Imaginary parts for resolvent-norm probes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub norm_probe: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ResolventArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, required = true)]
    pub lambda: Vec<f64>,
    /// Sample files, one per interval; missing intervals are taken as zero.
    #[arg(long = "f", required = true)]
    pub f: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, required = true)]
    pub window: Vec<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = SweepConfig::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = SweepConfig::DEFAULT_RK4_STEPS)]
    pub rk4_steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long)]
    pub modes: usize,
    #[arg(long)]
    pub psi: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, default_values_t = [0.0, 50.0])]
    pub window: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub norm_probe: Vec<f64>,
}

fn window(v: &[f64]) -> Result<(f64, f64), CliError> {
    let (lo, hi) = (v[0], v[1]);
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(CliError::Validation(format!("window: need finite LO <= HI, got {lo} {hi}")));
    }
    Ok((lo, hi))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_bytes(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn spectrum_outputs(
    problem: &ProblemDefinition,
    win: (f64, f64),
    probes: &[f64],
    out: Option<&Path>,
    csv: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if let Some(bad) = probes.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(CliError::Validation(format!("norm-probe: lambda_i must be positive, got {bad}")));
    }
    let report = assemble_report(problem, win, probes)?;
    emit(out, &spectrum_json(&report), stdout)?;
    if let Some(path) = csv {
        write_bytes(path, &spectrum_csv(&report)?)?;
    }
    Ok(())
}

pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(a) => {
            let problem = load_problem(&a.problem)?;
            spectrum_outputs(&problem, window(&a.window)?, &a.norm_probe, a.out.as_deref(), a.csv.as_deref(), stdout)
        }
        Command::ExamplePde(a) => {
            let problem = build_example_problem(&ExampleSpec::new(a.modes, a.psi, a.phi)?)?;
            spectrum_outputs(&problem, window(&a.window)?, &a.norm_probe, a.out.as_deref(), a.csv.as_deref(), stdout)
        }
        Command::Resolvent(a) => {
            let problem = load_problem(&a.problem)?;
            let lambda = Complex64::new(a.lambda[0], a.lambda[1]);
            let mut parts: [Option<_>; 3] = [None, None, None];
            for path in &a.f {
                let g = load_samples(path, &problem)?;
                let slot = &mut parts[g.interval() as usize];
                if slot.is_some() {
                    return Err(CliError::Validation(format!(
                        "{}: second sample file for interval {}",
                        path.display(),
                        g.interval()
                    )));
                }
                *slot = Some(g);
            }
            let [l, i, r] = parts;
            let fill = |g: Option<_>, id| g.unwrap_or_else(|| make_grid(id, &problem));
            let f = TripleFunction::new(
                Some(fill(l, IntervalId::OuterLeft)),
                Some(fill(i, IntervalId::Inner)),
                Some(fill(r, IntervalId::OuterRight)),
            )?;
            let sol = apply_resolvent(&problem, lambda, &f)?;
            emit(a.out.as_deref(), &crate::json::to_string(&ResolventJson::from(&sol)), stdout)
        }
        Command::Verify(a) => {
            let problem = load_problem(&a.problem)?;
            let report = run_verify(&problem, a.seed)?;
            emit(a.out.as_deref(), &crate::json::to_string(&report), stdout)?;
            if report.all_pass {
                Ok(())
            } else {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
                Err(CliError::Numerical(format!("verification failed: {}", failed.join(", "))))
            }
        }
        Command::OracleCompare(a) => {
            let problem = load_problem(&a.problem)?;
            let win = window(&a.window)?;
            if !(a.tol > 0.0) {
                return Err(CliError::Validation(format!("tol: must be positive, got {}", a.tol)));
            }
            let cfg = SweepConfig::with(win, a.samples, a.rk4_steps, SweepConfig::DEFAULT_REFINE_TOL)?;
            let report = assemble_report(&problem, win, &[])?;
            let sweep = det_sweep_eigenvalues(&problem, &cfg)?;
            let m = compare_spectra(&report, &sweep.roots, a.tol);
            for w in &sweep.warnings {
                writeln!(stderr, "warning: {w}").ok();
            }
            emit(a.out.as_deref(), &crate::json::to_string(&OracleCompareJson::new(win, a.tol, &m, &sweep)), stdout)?;
            if m.is_clean() {
                Ok(())
            } else {
                Err(CliError::Numerical(format!(
                    "oracle mismatch: {} unmatched closed-form, {} unmatched oracle eigenvalues",
                    m.unmatched_main.len(),
                    m.unmatched_oracle.len()
                )))
            }
        }
    }
}
