//! Neumann-mode reduction of the model problem
//! `i u_t + sgn(t) u_xx = f` on `x ∈ [0, 1]` with `u_x(t, 0) = u_x(t, 1) = 0`.
//!
//! Mode `n` of the Neumann Laplacian is `cos(n π x)` with eigenvalue `(n π)²`, so
//! truncating to `modes` modes gives diagonal coefficients. The finite interval
//! is `(-1/2, 1/2)`, the half-lines are `(-inf, -1)` and `(1, inf)`, and the
//! couplings are the scalar phases `W1 = e^{i phi}`, `W2 = e^{i psi}`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, UnitaryMatrix};
use crate::model::{IntervalConfig, ProblemDefinition, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleSpec {
    pub modes: usize,
    pub psi: f64,
    pub phi: f64,
}

impl ExampleSpec {
    pub fn new(modes: usize, psi: f64, phi: f64) -> Result<Self> {
        let spec = Self { modes, psi, phi };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes == 0 {
            return Err(Error::InvalidParameter { name: "modes", reason: "at least one mode required" });
        }
        for (name, v) in [("psi", self.psi), ("phi", self.phi)] {
            if !(0.0..TAU).contains(&v) {
                return Err(Error::InvalidParameter { name, reason: "angle must lie in [0, 2π)" });
            }
        }
        Ok(())
    }
}

/// `(n π)²` for `n = 0..modes`.
pub fn neumann_eigenvalues(modes: usize) -> Vec<f64> {
    (0..modes).map(|n| (n as f64 * PI) * (n as f64 * PI)).collect()
}

/// Problem for the truncated model: `A1 = A2 = diag((nπ)²)`, `A3 = -A1`.
pub fn build_example_problem(spec: &ExampleSpec) -> Result<ProblemDefinition> {
    build_example_problem_with(spec, IntervalConfig::new(-1.0, -0.5, 0.5, 1.0)?)
}

/// As [`build_example_problem`] with caller-chosen truncation and grid sizes.
/// The endpoints of `intervals` must be `-1, -1/2, 1/2, 1`.
pub fn build_example_problem_with(spec: &ExampleSpec, intervals: IntervalConfig) -> Result<ProblemDefinition> {
    spec.validate()?;
    if (intervals.a1(), intervals.a2(), intervals.b2(), intervals.a3()) != (-1.0, -0.5, 0.5, 1.0) {
        return Err(Error::InvalidParameter { name: "intervals", reason: "model endpoints are -1, -1/2, 1/2, 1" });
    }
    let lap = neumann_eigenvalues(spec.modes);
    let neg: Vec<f64> = lap.iter().map(|x| -x).collect();
    ProblemDefinition::new(
        intervals,
        HermitianMatrix::from_real_diag(&lap),
        HermitianMatrix::from_real_diag(&lap),
        HermitianMatrix::from_real_diag(&neg),
        UnitaryMatrix::scalar_phase(spec.modes, spec.phi),
        UnitaryMatrix::scalar_phase(spec.modes, spec.psi),
        ToleranceConfig::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{assemble_report, point_spectrum};

    #[test]
    fn single_mode_ladder() {
        let p = build_example_problem(&ExampleSpec::new(1, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.a2().as_matrix()[(0, 0)].re, 0.0);
        let l = point_spectrum(&p, (-7.0, 7.0)).unwrap().lambdas();
        assert_eq!(l.len(), 3);
        for (x, e) in l.iter().zip([-TAU, 0.0, TAU]) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn three_modes_match_scalar_law() {
        let psi = 0.4;
        let p = build_example_problem(&ExampleSpec::new(3, psi, 1.0).unwrap()).unwrap();
        let got = point_spectrum(&p, (0.0, 30.0)).unwrap().lambdas();
        let mut expect = Vec::new();
        for n in 0..3 {
            let theta = ((n as f64 * PI).powi(2) - psi).rem_euclid(TAU);
            let mut k = 0;
            while theta + TAU * k as f64 <= 30.0 {
                expect.push(theta + TAU * k as f64);
                k += 1;
            }
        }
        expect.sort_by(f64::total_cmp);
        assert_eq!(got.len(), expect.len());
        for (g, e) in got.iter().zip(&expect) {
            assert!((g - e).abs() < 1e-9, "{g} vs {e}");
        }
    }

    #[test]
    fn classification_is_real_line() {
        let p = build_example_problem(&ExampleSpec::new(2, 0.4, 0.0).unwrap()).unwrap();
        let r = assemble_report(&p, (0.0, 10.0), &[1.0]).unwrap();
        assert!(r.classification.spectrum_is_real_line);
        assert!(r.classification.outer_point_spectrum_empty);
    }

    #[test]
    fn spec_validation() {
        assert!(ExampleSpec::new(0, 0.0, 0.0).is_err());
        assert!(ExampleSpec::new(1, TAU, 0.0).is_err());
        assert!(ExampleSpec::new(1, 0.0, -0.1).is_err());
    }
}
