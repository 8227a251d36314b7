//! Boundary-triplet checks run by `multipoint verify`.
//!
//! Round trips are exact up to rounding. Green-identity defects come only from
//! second-order differences of the test functions and from truncating the
//! half-lines (the coefficient terms cancel exactly on the grid), so the bound
//! is `C d (h^2 + e^{-0.8 T})` outside and `C d (1 + Δ)^2 h^2` inside, `h` being
//! the step of the grid being tested.

use multipoint_core::boundary_triplet::{
    condition_residual_from_pair, construct_inner_witness, construct_witness, green_defect, inner_gamma,
    outer_condition_residual, outer_gamma, Triplet,
};
use multipoint_core::linalg::vec_norm;
use multipoint_core::model::{make_grid, IntervalId, ProblemDefinition, TripleFunction};
use multipoint_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;

pub const ROUND_TRIP_DRAWS: usize = 20;
pub const GREEN_DRAWS: usize = 5;
pub const ROUND_TRIP_BOUND: f64 = 1e-12;
/// Calibrated on the built-in example and random `d <= 4` problems at default grids.
pub const GREEN_CONSTANT: f64 = 2.0;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

fn check(name: &'static str, value: f64, bound: f64) -> Check {
    Check { name, value, bound, pass: value <= bound }
}

pub fn random_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    vec_norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
}

/// Smooth outer pair decaying like `e^{-0.8 |t - a1|}` and `e^{-0.9 (t - a3)}`,
/// with generic boundary values.
pub fn smooth_outer(rng: &mut ChaCha8Rng, problem: &ProblemDefinition) -> TripleFunction {
    let d = problem.dim();
    let iv = *problem.intervals();
    let (x, y, z, w) = (random_vec(rng, d), random_vec(rng, d), random_vec(rng, d), random_vec(rng, d));
    let u1 = make_grid(IntervalId::OuterLeft, problem).like(|_, t, o| {
        let s = t - iv.a1();
        for k in 0..d {
            o[k] = (x[k] + y[k] * (0.7 * s).sin()) * (0.8 * s).exp();
        }
    });
    let u3 = make_grid(IntervalId::OuterRight, problem).like(|_, t, o| {
        let s = t - iv.a3();
        for k in 0..d {
            o[k] = (z[k] + w[k] * s) * (-0.9 * s).exp();
        }
    });
    TripleFunction::outer(u1, u3).expect("grids built from one problem")
}

/// Smooth inner function with generic values at both ends.
pub fn smooth_inner(rng: &mut ChaCha8Rng, problem: &ProblemDefinition) -> TripleFunction {
    let d = problem.dim();
    let a2 = problem.intervals().a2();
    let (x, y, z) = (random_vec(rng, d), random_vec(rng, d), random_vec(rng, d));
    let u2 = make_grid(IntervalId::Inner, problem).like(|_, t, o| {
        let s = t - a2;
        for k in 0..d {
            o[k] = x[k] + y[k] * (2.0 * s).sin() + z[k] * s * s;
        }
    });
    TripleFunction::inner_only(u2).expect("grid built from the problem")
}

pub fn green_bound(problem: &ProblemDefinition, which: Triplet) -> f64 {
    let iv = problem.intervals();
    let c = GREEN_CONSTANT * problem.dim() as f64;
    match which {
        Triplet::Outer => {
            let h = iv.truncation() / (iv.n_outer() - 1) as f64;
            c * (h * h + (-0.8 * iv.truncation()).exp())
        }
        Triplet::Inner => {
            let h = iv.inner_length() / (iv.n_inner() - 1) as f64;
            let s = 1.0 + iv.inner_length();
            c * s * s * h * h
        }
    }
}

pub fn run_verify(problem: &ProblemDefinition, seed: u64) -> Result<VerifyReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = problem.dim();
    let (mut outer_rt, mut inner_rt, mut coupling) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..ROUND_TRIP_DRAWS {
        let (f, g) = (random_vec(&mut rng, d), random_vec(&mut rng, d));
        let pair = outer_gamma(&construct_witness(&f, &g, problem)?)?;
        outer_rt = outer_rt.max(diff(&pair.first, &f)).max(diff(&pair.second, &g));
        let pair = inner_gamma(&construct_inner_witness(&f, &g, problem)?)?;
        inner_rt = inner_rt.max(diff(&pair.first, &f)).max(diff(&pair.second, &g));
        // Direct coupling residual against the same condition through the boundary pair.
        let u = construct_witness(&f, &g, problem)?;
        let direct = outer_condition_residual(&u, problem.w1())?;
        let via_pair = condition_residual_from_pair(&outer_gamma(&u)?, problem.w1());
        coupling = coupling.max((direct - via_pair).abs() / (1.0 + direct));
    }
    let (mut outer_green, mut inner_green) = (0.0f64, 0.0f64);
    for _ in 0..GREEN_DRAWS {
        let (u, v) = (smooth_outer(&mut rng, problem), smooth_outer(&mut rng, problem));
        outer_green = outer_green.max(green_defect(&u, &v, problem, Triplet::Outer)?);
        let (u, v) = (smooth_inner(&mut rng, problem), smooth_inner(&mut rng, problem));
        inner_green = inner_green.max(green_defect(&u, &v, problem, Triplet::Inner)?);
    }
    let checks = vec![
        check("outer_witness_round_trip", outer_rt, ROUND_TRIP_BOUND),
        check("inner_witness_round_trip", inner_rt, ROUND_TRIP_BOUND),
        check("outer_green_defect", outer_green, green_bound(problem, Triplet::Outer)),
        check("inner_green_defect", inner_green, green_bound(problem, Triplet::Inner)),
        check("coupling_consistency", coupling, ROUND_TRIP_BOUND),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { seed, checks, all_pass })
}
