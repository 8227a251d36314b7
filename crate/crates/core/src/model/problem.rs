use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, UnitaryMatrix};

use super::grid::{GridFunction, IntervalId};

/// Numerical tolerances. Every threshold the library applies is read from here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Jacobi stops once the off-diagonal Frobenius mass is below `eig_tol * ||A||_F`.
    pub eig_tol: f64,
    /// Relative Hermitian defect accepted for `A1`, `A2`, `A3`.
    pub hermitian_tol: f64,
    /// `||U*U - I||_max` accepted for `W1`, `W2`.
    pub unitary_tol: f64,
    /// LU pivots below `pivot_tol` times the reference scale count as zero.
    pub pivot_tol: f64,
    /// Boundary-condition residual accepted by the verification checks.
    pub residual_tol: f64,
    /// Relative accuracy target for quadrature-based probes.
    pub quadrature_rtol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eig_tol: 1e-13,
            hermitian_tol: 1e-12,
            unitary_tol: 1e-10,
            pivot_tol: 1e-13,
            residual_tol: 1e-9,
            quadrature_rtol: 1e-3,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eig_tol", self.eig_tol),
            ("hermitian_tol", self.hermitian_tol),
            ("unitary_tol", self.unitary_tol),
            ("pivot_tol", self.pivot_tol),
            ("residual_tol", self.residual_tol),
            ("quadrature_rtol", self.quadrature_rtol),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter { name, reason: "tolerance must be finite and positive" });
            }
        }
        Ok(())
    }
}

/// Interval endpoints, outer truncation length and grid sizes.
///
/// Grid sizes are rounded up to the next odd number so that composite Simpson
/// applies without an end correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalConfig {
    a1: f64,
    a2: f64,
    b2: f64,
    a3: f64,
    truncation: f64,
    n_outer: usize,
    n_inner: usize,
}

impl IntervalConfig {
    pub const DEFAULT_TRUNCATION: f64 = 40.0;
    pub const DEFAULT_POINTS: usize = 801;

    pub fn new(a1: f64, a2: f64, b2: f64, a3: f64) -> Result<Self> {
        Self::with_grid(a1, a2, b2, a3, Self::DEFAULT_TRUNCATION, Self::DEFAULT_POINTS, Self::DEFAULT_POINTS)
    }

    pub fn with_grid(
        a1: f64,
        a2: f64,
        b2: f64,
        a3: f64,
        truncation: f64,
        n_outer: usize,
        n_inner: usize,
    ) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("b2", b2), ("a3", a3), ("T", truncation)] {
            if !v.is_finite() {
                return Err(Error::NonFinite { name });
            }
        }
        if !(a1 < a2) {
            return Err(Error::Ordering { fields: "a1,a2" });
        }
        if !(a2 < b2) {
            return Err(Error::Ordering { fields: "a2,b2" });
        }
        if !(b2 < a3) {
            return Err(Error::Ordering { fields: "b2,a3" });
        }
        if !(truncation > 0.0) {
            return Err(Error::InvalidParameter { name: "T", reason: "truncation length must be positive" });
        }
        for (name, n) in [("n_outer", n_outer), ("n_inner", n_inner)] {
            if n < 2 {
                return Err(Error::InvalidParameter { name, reason: "at least 2 grid points required" });
            }
        }
        Ok(Self { a1, a2, b2, a3, truncation, n_outer: round_odd(n_outer), n_inner: round_odd(n_inner) })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn a3(&self) -> f64 {
        self.a3
    }

    /// Length of the finite interval, `b2 - a2`.
    pub fn inner_length(&self) -> f64 {
        self.b2 - self.a2
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    pub fn n_outer(&self) -> usize {
        self.n_outer
    }

    pub fn n_inner(&self) -> usize {
        self.n_inner
    }

    /// `[start, end]` and point count of the grid covering `id`.
    pub fn span(&self, id: IntervalId) -> (f64, f64, usize) {
        match id {
            IntervalId::OuterLeft => (self.a1 - self.truncation, self.a1, self.n_outer),
            IntervalId::Inner => (self.a2, self.b2, self.n_inner),
            IntervalId::OuterRight => (self.a3, self.a3 + self.truncation, self.n_outer),
        }
    }

    /// Copy with different truncation and grid sizes.
    pub fn regridded(&self, truncation: f64, n_outer: usize, n_inner: usize) -> Result<Self> {
        Self::with_grid(self.a1, self.a2, self.b2, self.a3, truncation, n_outer, n_inner)
    }
}

fn round_odd(n: usize) -> usize {
    if n % 2 == 0 {
        n + 1
    } else {
        n
    }
}

/// Coefficients `A1, A2, A3`, couplings `W1, W2` and geometry of one selfadjoint extension.
///
/// The extension acts on triples `(u1, u2, u3)` with `u3(a3) = W1 u1(a1)` and
/// `u2(b2) = W2 u2(a2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDefinition {
    dim: usize,
    intervals: IntervalConfig,
    coeffs: [HermitianMatrix; 3],
    w1: UnitaryMatrix,
    w2: UnitaryMatrix,
    tolerances: ToleranceConfig,
}

impl ProblemDefinition {
    pub fn new(
        intervals: IntervalConfig,
        a1: HermitianMatrix,
        a2: HermitianMatrix,
        a3: HermitianMatrix,
        w1: UnitaryMatrix,
        w2: UnitaryMatrix,
        tolerances: ToleranceConfig,
    ) -> Result<Self> {
        tolerances.validate()?;
        let dim = a1.dim();
        if dim == 0 {
            return Err(Error::InvalidParameter { name: "dim", reason: "dimension must be positive" });
        }
        for found in [a2.dim(), a3.dim(), w1.dim(), w2.dim()] {
            if found != dim {
                return Err(Error::DimensionMismatch { expected: dim, found });
            }
        }
        Ok(Self { dim, intervals, coeffs: [a1, a2, a3], w1, w2, tolerances })
    }

    /// Validate raw matrices against `tolerances` and build the problem.
    /// Errors name the offending matrix.
    pub fn from_matrices(
        intervals: IntervalConfig,
        a: [ComplexMatrix; 3],
        w1: ComplexMatrix,
        w2: ComplexMatrix,
        tolerances: ToleranceConfig,
    ) -> Result<Self> {
        tolerances.validate()?;
        let [a1, a2, a3] = a;
        let herm = |m, name| HermitianMatrix::new_with_tol(m, tolerances.hermitian_tol).map_err(|e| e.named(name));
        let unit = |m, name| UnitaryMatrix::new_with_tol(m, tolerances.unitary_tol).map_err(|e| e.named(name));
        Self::new(
            intervals,
            herm(a1, "A1")?,
            herm(a2, "A2")?,
            herm(a3, "A3")?,
            unit(w1, "W1")?,
            unit(w2, "W2")?,
            tolerances,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn intervals(&self) -> &IntervalConfig {
        &self.intervals
    }

    pub fn tolerances(&self) -> &ToleranceConfig {
        &self.tolerances
    }

    /// Coefficient matrix on interval `id`.
    pub fn generator(&self, id: IntervalId) -> &HermitianMatrix {
        &self.coeffs[id as usize]
    }

    pub fn a1(&self) -> &HermitianMatrix {
        &self.coeffs[0]
    }

    pub fn a2(&self) -> &HermitianMatrix {
        &self.coeffs[1]
    }

    pub fn a3(&self) -> &HermitianMatrix {
        &self.coeffs[2]
    }

    pub fn w1(&self) -> &UnitaryMatrix {
        &self.w1
    }

    pub fn w2(&self) -> &UnitaryMatrix {
        &self.w2
    }

    /// Same problem on different grids.
    pub fn with_intervals(&self, intervals: IntervalConfig) -> Self {
        Self { intervals, ..self.clone() }
    }

    pub fn with_tolerances(&self, tolerances: ToleranceConfig) -> Result<Self> {
        tolerances.validate()?;
        Ok(Self { tolerances, ..self.clone() })
    }

    /// Largest `||Ak||_max`; handy for choosing grid steps.
    pub fn coefficient_scale(&self) -> f64 {
        self.coeffs.iter().map(|a| a.as_matrix().max_abs()).fold(0.0, Float::max)
    }
}

/// Zero-valued grid function covering interval `id` of `problem`.
pub fn make_grid(id: IntervalId, problem: &ProblemDefinition) -> GridFunction {
    let (start, end, n) = problem.intervals().span(id);
    GridFunction::zeros(id, start, end, n, problem.dim()).expect("validated interval config")
}
