use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default relative pivot threshold below which a matrix is reported singular.
pub(crate) const PIVOT_TOL: f64 = 1e-13;

/// Packed LU factors with partial pivoting, `P M = L U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    odd: bool,
    scale: f64,
}

impl LuFactors {
    /// Factor a square matrix. Never fails on singular input: a zero column simply
    /// leaves a zero pivot behind, which `det` reports and `solve` refuses.
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|r| (r, lu[(r, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if p != k {
                for c in 0..n {
                    let tmp = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = tmp;
                }
                perm.swap(k, p);
                odd = !odd;
            }
            if best == 0.0 {
                continue;
            }
            let pivot = lu[(k, k)];
            for r in k + 1..n {
                let factor = lu[(r, k)] / pivot;
                lu[(r, k)] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in k + 1..n {
                    let u = lu[(k, c)];
                    lu[(r, c)] -= factor * u;
                }
            }
        }
        Ok(Self { lu, perm, odd, scale: m.max_abs() })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Smallest pivot modulus.
    pub fn min_pivot(&self) -> f64 {
        (0..self.dim()).map(|k| self.lu[(k, k)].norm()).fold(f64::INFINITY, f64::min)
    }

    /// `max |M|` of the factored matrix.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn det(&self) -> Complex64 {
        let prod: Complex64 = (0..self.dim()).map(|k| self.lu[(k, k)]).product();
        if self.odd {
            -prod
        } else {
            prod
        }
    }

    /// Fail when some pivot is at or below `tol * reference`.
    pub fn check_pivots(&self, tol: f64, reference: f64) -> Result<()> {
        let pivot = self.min_pivot();
        if self.dim() > 0 && (pivot <= tol * reference || pivot == 0.0) {
            return Err(Error::Singular { pivot, scale: reference });
        }
        Ok(())
    }

    /// Forward/back substitution; the caller has checked the pivots.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let mut acc = x[r];
            for c in 0..r {
                acc -= self.lu[(r, c)] * x[c];
            }
            x[r] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = x[r];
            for c in r + 1..n {
                acc -= self.lu[(r, c)] * x[c];
            }
            x[r] = acc / self.lu[(r, r)];
        }
        x
    }

    pub fn solve_matrix(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim(), rhs.cols());
        for c in 0..rhs.cols() {
            out.set_column(c, &self.solve(&rhs.column(c)));
        }
        out
    }
}

/// Solve `M x = b` by LU with partial pivoting.
///
/// A pivot below `1e-13 * max|M|` is reported as [`Error::Singular`]; the resolvent
/// uses this to detect spectral parameters in or near the point spectrum.
pub fn solve_linear(m: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    solve_linear_with(m, b, PIVOT_TOL)
}

pub fn solve_linear_with(m: &ComplexMatrix, b: &[Complex64], pivot_tol: f64) -> Result<Vec<Complex64>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let lu = LuFactors::new(m)?;
    lu.check_pivots(pivot_tol, lu.scale())?;
    Ok(lu.solve(b))
}

/// Determinant as the signed product of the LU pivots.
pub fn det(m: &ComplexMatrix) -> Result<Complex64> {
    Ok(LuFactors::new(m)?.det())
}

pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let lu = LuFactors::new(m)?;
    lu.check_pivots(PIVOT_TOL, lu.scale())?;
    Ok(lu.solve_matrix(&ComplexMatrix::identity(m.rows())))
}
