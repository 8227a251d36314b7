//! Explicit resolvents `(L - lambda)^{-1}` built from the propagator kernels.
//!
//! The half-line part is solved by integrating towards the coupling point from
//! the side where the kernel decays: for `Im lambda > 0` from `+inf` down to
//! `a3`, then across the coupling `u3(a3) = W1 u1(a1)` onto the left half-line;
//! for `Im lambda < 0` the mirror image. The finite interval uses variation of
//! constants plus one linear solve for the initial value.

mod kernel;

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig_with, vec_norm, ComplexMatrix, HermitianEig, LuFactors};
use crate::model::{grid_inner_product, make_grid, GridFunction, IntervalId, ProblemDefinition, TripleFunction};
use crate::oracle::{apply_expression_with_order, RESIDUAL_FD_ORDER};
use crate::spectrum::point_spectrum;

use kernel::{convolve, Direction};

/// Solution `u = R_lambda f` with the boundary vectors used to build it.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventSolution {
    pub lambda: Complex64,
    pub u: TripleFunction,
    /// `u1(a1)`, set when `Im lambda > 0`.
    pub f1star: Option<Vec<Complex64>>,
    /// `u2(a2)`, set when the inner part was solved.
    pub f2star: Option<Vec<Complex64>>,
    /// `u3(a3)`, set when `Im lambda < 0`.
    pub f3star: Option<Vec<Complex64>>,
    /// Largest pointwise norm of `i u' + A u - lambda u - f` (finite differences).
    pub residual_ode: f64,
    /// Largest coupling residual `||u3(a3) - W1 u1(a1)||`, `||u2(b2) - W2 u2(a2)||`.
    pub residual_bc: f64,
}

fn check_grid(problem: &ProblemDefinition, g: &GridFunction, id: IntervalId) -> Result<()> {
    if g.interval() != id {
        return Err(Error::GridMismatch);
    }
    if g.dim() != problem.dim() {
        return Err(Error::DimensionMismatch { expected: problem.dim(), found: g.dim() });
    }
    let iv = problem.intervals();
    let ok = match id {
        IntervalId::OuterLeft => g.t_end() == iv.a1(),
        IntervalId::Inner => g.t_start() == iv.a2() && g.t_end() == iv.b2(),
        IntervalId::OuterRight => g.t_start() == iv.a3(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

/// `e^{i(A - lambda)(t - t0)} v` at every node of `grid`.
fn homogeneous(eig: &HermitianEig, lambda: Complex64, grid: &GridFunction, t0: f64, v: &[Complex64]) -> GridFunction {
    grid.like(|_, t, out| out.copy_from_slice(&eig.propagate(lambda, t - t0, v)))
}

fn combine(hom: &GridFunction, part: &GridFunction, factor: Complex64) -> GridFunction {
    let mut out = hom.clone();
    out.axpy(factor, part).expect("same grid");
    out
}

fn ode_residual(problem: &ProblemDefinition, u: &GridFunction, f: &GridFunction, lambda: Complex64) -> Result<f64> {
    let mut r = apply_expression_with_order(problem, u.interval(), u, lambda, RESIDUAL_FD_ORDER)?;
    r.axpy(Complex64::new(-1.0, 0.0), f)?;
    Ok(r.sup_norm())
}

fn diff_norm(a: &[Complex64], b: &[Complex64]) -> f64 {
    let d: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    vec_norm(&d)
}

/// Resolvent of the half-line part for `Im lambda != 0`.
///
/// `f1` must end at `a1` and `f3` must start at `a3`; the solution lives on the
/// same grids. Integrals stop at the truncated grid ends.
pub fn resolvent_outer(
    problem: &ProblemDefinition,
    lambda: Complex64,
    f1: &GridFunction,
    f3: &GridFunction,
) -> Result<ResolventSolution> {
    if lambda.im == 0.0 || !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::Lambda { lambda, reason: "the half-line resolvent needs Im lambda != 0" });
    }
    check_grid(problem, f1, IntervalId::OuterLeft)?;
    check_grid(problem, f3, IntervalId::OuterRight)?;
    let tol = problem.tolerances();
    let e1 = herm_eig_with(problem.a1(), tol)?;
    let e3 = herm_eig_with(problem.a3(), tol)?;
    let w1 = problem.w1().as_matrix();
    let iv = problem.intervals();
    let i = Complex64::i();
    let (u1, u3, f1star, f3star) = if lambda.im > 0.0 {
        // u3(t) = i ∫_t^inf e^{i(A3 - λ)(t - s)} f3(s) ds
        let mut u3 = convolve(&e3, lambda, f3, Direction::Backward);
        u3.scale(i);
        let f1star = w1.adjoint_matvec(u3.first());
        // u1(t) = e^{i(A1 - λ)(t - a1)} f1* + i ∫_t^{a1} e^{i(A1 - λ)(t - s)} f1(s) ds
        let part = convolve(&e1, lambda, f1, Direction::Backward);
        let u1 = combine(&homogeneous(&e1, lambda, f1, iv.a1(), &f1star), &part, i);
        (u1, u3, Some(f1star), None)
    } else {
        // u1(t) = -i ∫_{-inf}^t e^{i(A1 - λ)(t - s)} f1(s) ds
        let mut u1 = convolve(&e1, lambda, f1, Direction::Forward);
        u1.scale(-i);
        let f3star = w1.matvec(u1.last());
        // u3(t) = e^{i(A3 - λ)(t - a3)} f3* - i ∫_{a3}^t e^{i(A3 - λ)(t - s)} f3(s) ds
        let part = convolve(&e3, lambda, f3, Direction::Forward);
        let u3 = combine(&homogeneous(&e3, lambda, f3, iv.a3(), &f3star), &part, -i);
        (u1, u3, None, Some(f3star))
    };
    let residual_ode = ode_residual(problem, &u1, f1, lambda)?.max(ode_residual(problem, &u3, f3, lambda)?);
    let residual_bc = diff_norm(u3.first(), &w1.matvec(u1.last()));
    Ok(ResolventSolution {
        lambda,
        u: TripleFunction::new(Some(u1), None, Some(u3))?,
        f1star,
        f2star: None,
        f3star,
        residual_ode,
        residual_bc,
    })
}

/// Resolvent of the finite-interval part; any `lambda` off its point spectrum.
///
/// `u2 = e^{i(A2 - λ)(t - a2)} f2* + u_p` with `u_p(t) = -i ∫_{a2}^t e^{i(A2 - λ)(t - s)} f2(s) ds`
/// and `(W2 - e^{i(A2 - λ)(b2 - a2)}) f2* = u_p(b2)`. A singular system means
/// `lambda` is an eigenvalue; the error then carries the nearest one.
pub fn resolvent_inner(problem: &ProblemDefinition, lambda: Complex64, f2: &GridFunction) -> Result<ResolventSolution> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(Error::NonFinite { name: "lambda" });
    }
    check_grid(problem, f2, IntervalId::Inner)?;
    let tol = problem.tolerances();
    let e2 = herm_eig_with(problem.a2(), tol)?;
    let iv = problem.intervals();
    let delta = iv.inner_length();
    let i = Complex64::i();
    let mut up = convolve(&e2, lambda, f2, Direction::Forward);
    up.scale(-i);
    let w2 = problem.w2().as_matrix();
    let prop = e2.propagator(lambda, delta);
    let system: ComplexMatrix = w2 - &prop;
    let lu = LuFactors::new(&system)?;
    let reference = w2.max_abs().max(prop.max_abs());
    if lu.check_pivots(tol.pivot_tol, reference).is_err() {
        return Err(Error::InPointSpectrum { lambda, nearest: nearest_eigenvalue(problem, lambda.re).map(Box::new) });
    }
    let f2star = lu.solve(up.last());
    let u2 = combine(&homogeneous(&e2, lambda, f2, iv.a2(), &f2star), &up, Complex64::new(1.0, 0.0));
    let residual_ode = ode_residual(problem, &u2, f2, lambda)?;
    let residual_bc = diff_norm(u2.last(), &w2.matvec(u2.first()));
    Ok(ResolventSolution {
        lambda,
        u: TripleFunction::new(None, Some(u2), None)?,
        f1star: None,
        f2star: Some(f2star),
        f3star: None,
        residual_ode,
        residual_bc,
    })
}

fn nearest_eigenvalue(problem: &ProblemDefinition, x: f64) -> Option<crate::spectrum::SpectrumEntry> {
    let reach = core::f64::consts::TAU / problem.intervals().inner_length();
    let report = point_spectrum(problem, (x - reach, x + reach)).ok()?;
    report.entries.into_iter().min_by(|a, b| (a.lambda - x).abs().total_cmp(&(b.lambda - x).abs()))
}

/// Resolvent of the full extension, `Im lambda != 0`.
///
/// Missing parts of `f` are zero on the default grids; the solution carries all
/// three parts on the grids of `f` (or the defaults).
pub fn apply_resolvent(problem: &ProblemDefinition, lambda: Complex64, f: &TripleFunction) -> Result<ResolventSolution> {
    if lambda.im == 0.0 {
        return Err(Error::Lambda { lambda, reason: "the full extension has no bounded resolvent on the real line" });
    }
    if let Some(d) = f.dim() {
        if d != problem.dim() {
            return Err(Error::DimensionMismatch { expected: problem.dim(), found: d });
        }
    }
    let part = |id| f.part(id).cloned().unwrap_or_else(|| make_grid(id, problem));
    let outer = resolvent_outer(problem, lambda, &part(IntervalId::OuterLeft), &part(IntervalId::OuterRight))?;
    let inner = resolvent_inner(problem, lambda, &part(IntervalId::Inner))?;
    let take = |s: &ResolventSolution, id| s.u.part(id).cloned();
    Ok(ResolventSolution {
        lambda,
        u: TripleFunction::new(
            take(&outer, IntervalId::OuterLeft),
            take(&inner, IntervalId::Inner),
            take(&outer, IntervalId::OuterRight),
        )?,
        f1star: outer.f1star,
        f2star: inner.f2star,
        f3star: outer.f3star,
        residual_ode: outer.residual_ode.max(inner.residual_ode),
        residual_bc: outer.residual_bc.max(inner.residual_bc),
    })
}

/// `||(R_lambda f*)_3|| / ||f*||` for the probe `f* = (0, 0, e^{i(A3 - conj(lambda))(t - a3)} f3vec)`,
/// `lambda = lambda_r + i lambda_i`.
///
/// The exact value is `1/(2 lambda_i)` for every `lambda_r`, so the resolvent
/// norm is unbounded as `lambda_i -> 0`. The probe uses its own right half-line
/// grid: length `max(T, 40/min(1, lambda_i))` and step `min(h, 0.02/ω)` with
/// `ω = max_j |a3_j - lambda_r| + lambda_i`.
pub fn resolvent_norm_probe(problem: &ProblemDefinition, lambda_i: f64, lambda_r: f64, f3vec: &[Complex64]) -> Result<f64> {
    if !(lambda_i > 0.0 && lambda_i.is_finite()) {
        return Err(Error::InvalidParameter { name: "lambda_i", reason: "must be positive" });
    }
    if !lambda_r.is_finite() {
        return Err(Error::NonFinite { name: "lambda_r" });
    }
    if f3vec.len() != problem.dim() {
        return Err(Error::DimensionMismatch { expected: problem.dim(), found: f3vec.len() });
    }
    if vec_norm(f3vec) == 0.0 {
        return Err(Error::InvalidParameter { name: "f3vec", reason: "probe vector must be nonzero" });
    }
    let e3 = herm_eig_with(problem.a3(), problem.tolerances())?;
    let iv = problem.intervals();
    let omega = e3.eigenvalues().iter().map(|a| (a - lambda_r).abs()).fold(0.0, f64::max) + lambda_i;
    let length = iv.truncation().max(40.0 / lambda_i.min(1.0));
    let (_, _, n_default) = iv.span(IntervalId::OuterRight);
    let h = (iv.truncation() / (n_default - 1) as f64).min(0.02 / omega);
    let mut n = Float::ceil(length / h) as usize + 1;
    if n % 2 == 0 {
        n += 1;
    }
    let lambda = Complex64::new(lambda_r, lambda_i);
    let a3 = iv.a3();
    let f3 = GridFunction::from_fn(IntervalId::OuterRight, a3, a3 + length, n, problem.dim(), |t, out| {
        out.copy_from_slice(&e3.propagate(lambda.conj(), t - a3, f3vec));
    })?;
    let f1 = make_grid(IntervalId::OuterLeft, problem);
    let sol = resolvent_outer(problem, lambda, &f1, &f3)?;
    let u3 = sol.u.require(IntervalId::OuterRight)?;
    let num = grid_inner_product(u3, u3)?.re;
    let den = grid_inner_product(&f3, &f3)?.re;
    Ok(Float::sqrt(num / den))
}
