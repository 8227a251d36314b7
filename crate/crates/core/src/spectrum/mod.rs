//! Point spectrum of the finite-interval part and the spectral classification.
//!
//! On `(a2, b2)` every solution of `i u' + A2 u = lambda u` is
//! `e^{i(A2 - lambda)(t - a2)} f`, and the coupling `u(b2) = W2 u(a2)` holds for a
//! nonzero `f` exactly when `e^{i lambda (b2 - a2)}` is an eigenvalue of the
//! monodromy matrix `M = W2^* e^{i A2 (b2 - a2)}`. Each eigenvalue `mu = e^{i theta}`
//! of `M` therefore gives the ladder `lambda = (theta + 2 pi n) / (b2 - a2)`.
//!
//! On the half-lines the same propagator has constant norm for real `lambda`, so
//! no nonzero solution is square integrable and the outer part has no
//! eigenvalues at all.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{expm_i_hermitian, herm_eig_with, principal_arg, unitary_eig, vec_norm, HermitianEig, UnitaryMatrix};
use crate::model::{make_grid, GridFunction, IntervalId, ProblemDefinition};
use crate::oracle::{apply_expression_with_order, RESIDUAL_FD_ORDER};
use crate::resolvent::resolvent_norm_probe;

/// One eigenvalue of the inner part together with its monodromy data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub lambda: f64,
    /// Monodromy eigenvalue `e^{i lambda (b2 - a2)}`.
    pub mu: Complex64,
    /// `arg mu` in `[0, 2π)`.
    pub theta: f64,
    pub branch_n: i64,
    /// Index of `mu` among the monodromy eigenvalues (sorted by argument).
    pub mode_j: usize,
    /// Initial value `f2* = u2(a2)`, unit norm, phase-normalized.
    pub eigvec: Vec<Complex64>,
    /// Largest pointwise norm of `i u' + A2 u - lambda u` on the inner grid.
    pub ode_residual: f64,
    /// `||u2(b2) - W2 u2(a2)||`.
    pub bc_residual: f64,
}

/// Computed evidence for the structure of the full spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// The half-line part has no eigenvalues; backed by `norm_constancy_deviation`.
    pub outer_point_spectrum_empty: bool,
    /// The spectrum of the whole extension is the real line; backed by the probes.
    pub spectrum_is_real_line: bool,
    /// Largest `| ||u1(t)|| - ||f1*|| |` over the reported eigenvalues (or the
    /// window centre) and the standard basis vectors.
    pub norm_constancy_deviation: f64,
}

/// Resolvent-norm probe at `lambda_r + i lambda_i`; the exact ratio is `1/(2 lambda_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    pub lambda_i: f64,
    pub lambda_r: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub window: (f64, f64),
    /// Sorted by `lambda`, then `mode_j`.
    pub entries: Vec<SpectrumEntry>,
    pub classification: Classification,
    pub probes: Vec<ProbeResult>,
}

impl SpectrumReport {
    pub fn lambdas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }
}

/// `M = W2^* e^{i A2 (b2 - a2)}`.
pub fn monodromy(problem: &ProblemDefinition) -> Result<UnitaryMatrix> {
    let prop = expm_i_hermitian(problem.a2(), problem.intervals().inner_length())?;
    Ok(problem.w2().adjoint().compose(&prop))
}

/// Eigenvalues of the inner part inside `window` (inclusive), with eigenvectors
/// and residuals. A window with `lo > hi` yields no entries.
pub fn point_spectrum(problem: &ProblemDefinition, window: (f64, f64)) -> Result<SpectrumReport> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParameter { name: "window", reason: "bounds must be finite" });
    }
    let delta = problem.intervals().inner_length();
    let eig = unitary_eig(&monodromy(problem)?)?;
    let a2 = herm_eig_with(problem.a2(), problem.tolerances())?;
    let mut entries = Vec::new();
    for (j, &mu) in eig.eigenvalues().iter().enumerate() {
        let theta = principal_arg(mu);
        let eigvec = eig.vectors().column(j);
        let n_lo = Float::ceil((lo * delta - theta) / TAU) as i64 - 1;
        let n_hi = Float::floor((hi * delta - theta) / TAU) as i64 + 1;
        for n in n_lo..=n_hi {
            let lambda = (theta + TAU * n as f64) / delta;
            if lambda < lo || lambda > hi {
                continue;
            }
            let u = propagate_inner(problem, &a2, lambda, &eigvec)?;
            let (ode_residual, bc_residual) = inner_residuals(problem, &u, lambda)?;
            entries.push(SpectrumEntry {
                lambda,
                mu,
                theta,
                branch_n: n,
                mode_j: j,
                eigvec: eigvec.clone(),
                ode_residual,
                bc_residual,
            });
        }
    }
    entries.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.mode_j.cmp(&b.mode_j)));
    Ok(SpectrumReport {
        window,
        entries,
        classification: Classification {
            outer_point_spectrum_empty: true,
            spectrum_is_real_line: true,
            norm_constancy_deviation: 0.0,
        },
        probes: Vec::new(),
    })
}

/// `u2(t) = e^{i(A2 - lambda)(t - a2)} f2*` on the inner grid.
pub fn eigenfunction_inner(problem: &ProblemDefinition, lambda: f64, f2star: &[Complex64]) -> Result<GridFunction> {
    let a2 = herm_eig_with(problem.a2(), problem.tolerances())?;
    propagate_inner(problem, &a2, lambda, f2star)
}

fn propagate_inner(problem: &ProblemDefinition, a2: &HermitianEig, lambda: f64, f2star: &[Complex64]) -> Result<GridFunction> {
    if f2star.len() != problem.dim() {
        return Err(Error::DimensionMismatch { expected: problem.dim(), found: f2star.len() });
    }
    if vec_norm(f2star) == 0.0 {
        return Err(Error::InvalidParameter { name: "f2star", reason: "initial vector must be nonzero" });
    }
    let a2_start = problem.intervals().a2();
    let lambda = Complex64::new(lambda, 0.0);
    Ok(make_grid(IntervalId::Inner, problem).like(|_, t, out| {
        out.copy_from_slice(&a2.propagate(lambda, t - a2_start, f2star));
    }))
}

/// `(ode, bc)` residuals of an inner eigenfunction candidate.
pub fn inner_residuals(problem: &ProblemDefinition, u: &GridFunction, lambda: f64) -> Result<(f64, f64)> {
    let r = apply_expression_with_order(problem, IntervalId::Inner, u, Complex64::new(lambda, 0.0), RESIDUAL_FD_ORDER)?;
    let w2_ua = problem.w2().as_matrix().matvec(u.first());
    let diff: Vec<Complex64> = u.last().iter().zip(&w2_ua).map(|(a, b)| a - b).collect();
    Ok((r.sup_norm(), vec_norm(&diff)))
}

/// `max_t | ||u1(t)|| - ||f1*|| |` for `u1(t) = e^{i(A1 - lambda)(t - a1)} f1*` on
/// the truncated left half-line.
///
/// For real `lambda` the propagator is unitary, so a value at rounding level
/// shows `||u1(t)||` is constant and `u1` is not square integrable on
/// `(-inf, a1)`. Non-real `lambda` is rejected.
pub fn outer_norm_constancy(problem: &ProblemDefinition, lambda: Complex64, f1star: &[Complex64]) -> Result<f64> {
    if lambda.im != 0.0 || !lambda.re.is_finite() {
        return Err(Error::Lambda { lambda, reason: "norm constancy needs a real spectral parameter" });
    }
    if f1star.len() != problem.dim() {
        return Err(Error::DimensionMismatch { expected: problem.dim(), found: f1star.len() });
    }
    let a1 = herm_eig_with(problem.a1(), problem.tolerances())?;
    let a1_end = problem.intervals().a1();
    let reference = vec_norm(f1star);
    let grid = make_grid(IntervalId::OuterLeft, problem);
    let mut worst: f64 = 0.0;
    for k in 0..grid.len() {
        let u = a1.propagate(lambda, grid.node(k) - a1_end, f1star);
        worst = worst.max((vec_norm(&u) - reference).abs());
    }
    Ok(worst)
}

/// Point spectrum in `window` plus the classification evidence: the
/// norm-constancy witness at every reported eigenvalue and resolvent-norm
/// probes at `lambda_r = 0` for each requested `lambda_i`.
pub fn assemble_report(problem: &ProblemDefinition, window: (f64, f64), probe_lambdas: &[f64]) -> Result<SpectrumReport> {
    let mut report = point_spectrum(problem, window)?;
    let d = problem.dim();
    let mut lambdas: Vec<f64> = report.entries.iter().map(|e| e.lambda).collect();
    if lambdas.is_empty() {
        lambdas.push(0.5 * (window.0 + window.1));
    }
    let mut deviation: f64 = 0.0;
    for &lambda in &lambdas {
        for k in 0..d {
            let mut e = alloc::vec![Complex64::new(0.0, 0.0); d];
            e[k] = Complex64::new(1.0, 0.0);
            deviation = deviation.max(outer_norm_constancy(problem, Complex64::new(lambda, 0.0), &e)?);
        }
    }
    report.classification.norm_constancy_deviation = deviation;
    report.classification.outer_point_spectrum_empty = deviation <= problem.tolerances().residual_tol;
    let mut probe_vec = alloc::vec![Complex64::new(0.0, 0.0); d];
    probe_vec[0] = Complex64::new(1.0, 0.0);
    for &lambda_i in probe_lambdas {
        let ratio = resolvent_norm_probe(problem, lambda_i, 0.0, &probe_vec)?;
        report.probes.push(ProbeResult { lambda_i, lambda_r: 0.0, ratio });
    }
    let rtol = problem.tolerances().quadrature_rtol;
    report.classification.spectrum_is_real_line =
        report.probes.iter().all(|p| p.ratio >= (1.0 - rtol) / (2.0 * p.lambda_i));
    Ok(report)
}
