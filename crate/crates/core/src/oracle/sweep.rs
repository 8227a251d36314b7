use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{det, ComplexMatrix};
use crate::model::ProblemDefinition;

use super::rk4::rk4_fundamental_powered;

/// Subdivisions used when a sample cell hides a root pair.
/// Odd, so the centre of a resampled cell is never a node.
const CLUSTER_SUBDIVISIONS: usize = 63;
/// Nested resampling levels before a cluster is reported as unresolved.
const CLUSTER_DEPTH: usize = 4;

/// Parameters for the determinant sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub window: (f64, f64),
    pub samples: usize,
    pub rk4_steps: usize,
    pub refine_tol: f64,
}

impl SweepConfig {
    pub const DEFAULT_SAMPLES: usize = 4001;
    pub const DEFAULT_RK4_STEPS: usize = 2048;
    pub const DEFAULT_REFINE_TOL: f64 = 1e-12;

    pub fn new(window: (f64, f64)) -> Result<Self> {
        Self::with(window, Self::DEFAULT_SAMPLES, Self::DEFAULT_RK4_STEPS, Self::DEFAULT_REFINE_TOL)
    }

    pub fn with(window: (f64, f64), samples: usize, rk4_steps: usize, refine_tol: f64) -> Result<Self> {
        let cfg = Self { window, samples, rk4_steps, refine_tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter { name: "window", reason: "need finite lo < hi" });
        }
        if self.samples < 16 {
            return Err(Error::InvalidParameter { name: "samples", reason: "at least 16 samples required" });
        }
        if self.rk4_steps < 64 {
            return Err(Error::InvalidParameter { name: "rk4_steps", reason: "at least 64 steps required" });
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::InvalidParameter { name: "refine_tol", reason: "must be positive" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Sorted roots; an unresolved root pair appears twice.
    pub roots: Vec<f64>,
    pub warnings: Vec<String>,
}

/// `det(W2 - Φ_λ(Δ))` with `Φ` from RK4.
struct Objective<'a> {
    problem: &'a ProblemDefinition,
    w2: &'a ComplexMatrix,
    steps: usize,
    delta: f64,
    /// `1 / det W2`, folded into the phase normalisation.
    inv_det_w2: Complex64,
    /// Unit phase making the normalised determinant real.
    phase: Complex64,
}

impl Objective<'_> {
    fn raw(&self, lambda: f64) -> Complex64 {
        let phi = rk4_fundamental_powered(self.problem.a2(), Complex64::new(lambda, 0.0), self.delta, self.steps);
        det(&(self.w2 - &phi)).expect("square")
    }

    /// `det(W2 - Φ_λ)·e^{i d Δ λ/2}/det W2`.
    ///
    /// Writing `det(W2 - Φ_λ) = det W2 ∏_j (1 - μ_j e^{-iλΔ})` shows this equals a
    /// constant phase times `∏_j sin((θ_j - λΔ)/2)`, a real function with a simple
    /// sign change at every simple root.
    fn normalized(&self, lambda: f64) -> Complex64 {
        let d = self.problem.dim() as f64;
        self.raw(lambda) * self.inv_det_w2 * Complex64::from_polar(1.0, d * self.delta * lambda / 2.0)
    }

    fn real(&self, lambda: f64) -> f64 {
        (self.phase.conj() * self.normalized(lambda)).re
    }
}

/// Locate the inner point spectrum in `cfg.window` as zeros of
/// `det(W2 - Φ_λ(b2 - a2))`, with `Φ` integrated by RK4.
///
/// The window is sampled uniformly; sign changes of the phase-normalised
/// determinant are refined by bisection. Between consecutive zeros the modulus
/// of a product of sines is log-concave, so a sampled local minimum of `|det|`
/// below `0.1·median` that sits away from any sign change marks a root pair
/// inside one cell. Such cells are resampled; a pair still unresolved after
/// [`CLUSTER_DEPTH`] levels is located by golden-section search, reported twice
/// and flagged in `warnings`.
pub fn det_sweep_eigenvalues(problem: &ProblemDefinition, cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let w2 = problem.w2().as_matrix();
    let mut obj = Objective {
        problem,
        w2,
        steps: cfg.rk4_steps,
        delta: problem.intervals().inner_length(),
        inv_det_w2: det(w2)?.inv(),
        phase: Complex64::new(1.0, 0.0),
    };
    let (lo, hi) = cfg.window;
    let n = cfg.samples;
    let grid: Vec<f64> = (0..n)
        .map(|k| if k + 1 == n { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 })
        .collect();
    let raw: Vec<Complex64> = grid.iter().map(|&l| obj.normalized(l)).collect();
    let peak = raw.iter().copied().fold(Complex64::new(0.0, 0.0), |a, b| if b.norm() > a.norm() { b } else { a });
    if peak.norm() > 0.0 {
        obj.phase = peak / peak.norm();
    }
    let vals: Vec<f64> = raw.iter().map(|z| (obj.phase.conj() * z).re).collect();
    let mags: Vec<f64> = raw.iter().map(|z| z.norm()).collect();
    let threshold = 0.1 * median(&mags);

    let mut out = SweepResult { roots: Vec::new(), warnings: Vec::new() };
    scan(&obj, &grid, &vals, threshold, cfg.refine_tol, 0, &mut out);
    out.roots.sort_by(f64::total_cmp);
    Ok(out)
}

/// Record the roots visible on one sampled grid and descend into cells that
/// hide a pair. Returns the number of roots recorded.
fn scan(obj: &Objective<'_>, pts: &[f64], vals: &[f64], threshold: f64, tol: f64, depth: usize, out: &mut SweepResult) -> usize {
    let n = pts.len();
    let before = out.roots.len();
    let mut near = alloc::vec![false; n];
    for k in 0..n {
        if vals[k] == 0.0 {
            near[k.saturating_sub(1)..(k + 2).min(n)].iter_mut().for_each(|x| *x = true);
            // A sample landing exactly on a root hides whether a second root sits
            // next to it; equal signs on both sides mean an even count.
            let paired = k > 0 && k + 1 < n && vals[k - 1] * vals[k + 1] > 0.0;
            if paired {
                resolve_cluster(obj, pts[k - 1], pts[k + 1], tol, depth, out);
            } else {
                out.roots.push(pts[k]);
            }
        } else if k + 1 < n && vals[k + 1] != 0.0 && (vals[k] < 0.0) != (vals[k + 1] < 0.0) {
            out.roots.push(bisect(obj, pts[k], pts[k + 1], vals[k], tol));
            near[k] = true;
            near[k + 1] = true;
        }
    }
    for k in 1..n.saturating_sub(1) {
        let m = vals[k].abs();
        if m <= vals[k - 1].abs() && m <= vals[k + 1].abs() && m < threshold && !near[k] {
            resolve_cluster(obj, pts[k - 1], pts[k + 1], tol, depth, out);
        }
    }
    out.roots.len() - before
}

fn resolve_cluster(obj: &Objective<'_>, lo: f64, hi: f64, tol: f64, depth: usize, out: &mut SweepResult) {
    if depth < CLUSTER_DEPTH && hi - lo > tol {
        let m = CLUSTER_SUBDIVISIONS;
        let pts: Vec<f64> = (0..=m).map(|k| if k == m { hi } else { lo + (hi - lo) * k as f64 / m as f64 }).collect();
        let vals: Vec<f64> = pts.iter().map(|&l| obj.real(l)).collect();
        if scan(obj, &pts, &vals, f64::INFINITY, tol, depth + 1, out) > 0 {
            return;
        }
    }
    let root = golden_min(|l| obj.normalized(l).norm(), lo, hi, tol);
    out.roots.push(root);
    out.roots.push(root);
    out.warnings.push(format!("unresolved cluster near lambda = {root:.12e}; increase samples"));
}

fn bisect(obj: &Objective<'_>, mut a: f64, mut b: f64, fa: f64, tol: f64) -> f64 {
    let neg_a = fa < 0.0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = obj.real(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (Float::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        if !(c > a && d < b) {
            break;
        }
    }
    0.5 * (a + b)
}

fn median(v: &[f64]) -> f64 {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}
