use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::hermitian::jacobi;
use super::lu::LuFactors;
use super::matrix::ComplexMatrix;
use super::{lex_cmp, normalize_phase};
use crate::error::{Error, Result};
use crate::model::ToleranceConfig;

/// `|det(I + U)|` below this triggers a phase pre-rotation.
const CAYLEY_DET_TOL: f64 = 1e-10;

/// Square complex matrix with `||U^* U - I||_max <= unitary_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(ComplexMatrix);

impl UnitaryMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::new_with_tol(m, ToleranceConfig::default().unitary_tol)
    }

    pub fn new_with_tol(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { name: "matrix" });
        }
        let residual = m.unitary_defect();
        if residual > tol {
            return Err(Error::NotUnitary { name: "matrix", residual });
        }
        Ok(Self(m))
    }

    /// Products and exponentials of unitary matrices built inside the crate.
    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn identity(d: usize) -> Self {
        Self(ComplexMatrix::identity(d))
    }

    /// `e^{i phase} I`.
    pub fn scalar_phase(d: usize, phase: f64) -> Self {
        Self(ComplexMatrix::identity(d).scale(Complex64::from_polar(1.0, phase)))
    }

    /// `diag(e^{i phases[k]})`.
    pub fn diag_phases(phases: &[f64]) -> Self {
        let diag: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
        Self(ComplexMatrix::from_diag(&diag))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, other: &UnitaryMatrix) -> Self {
        Self(&self.0 * &other.0)
    }
}

/// Eigenvalues on the unit circle, sorted by principal argument in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryEig {
    eigenvalues: Vec<Complex64>,
    vectors: ComplexMatrix,
    rotation: f64,
}

impl UnitaryEig {
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    /// Phase `phi` of the pre-rotation `U -> e^{i phi} U` applied before the Cayley map.
    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Argument of `z` in `[0, 2π)`; values within `1e-14` of `2π` wrap to `0`.
pub fn principal_arg(z: Complex64) -> f64 {
    let mut theta = z.im.atan2(z.re);
    if theta < 0.0 {
        theta += TAU;
    }
    if theta >= TAU - 1e-14 {
        theta = 0.0;
    }
    theta
}

/// Eigendecomposition of a unitary matrix through the Cayley transform
/// `H = i (I - U)(I + U)^{-1}`.
///
/// When `-1` is (close to) an eigenvalue the matrix is first rotated by
/// `e^{i phi}`, `phi` running through `2πk / (2d + 2)`. Among those `2d + 2`
/// phases at most `d` put an eigenvalue within `π / (4d + 4)` of `-1`, so a
/// candidate with `||H||_∞ <= sqrt(d) cot(π / (8d + 8))` always exists.
pub fn unitary_eig(u: &UnitaryMatrix) -> Result<UnitaryEig> {
    let d = u.dim();
    if d == 0 {
        return Ok(UnitaryEig { eigenvalues: Vec::new(), vectors: ComplexMatrix::zeros(0, 0), rotation: 0.0 });
    }
    let candidates = 2 * d + 2;
    let bound = (d as f64).sqrt() / (PI / (4.0 * candidates as f64)).tan();
    let mut best: Option<(f64, f64, ComplexMatrix)> = None;
    for k in 0..candidates {
        let phi = TAU * k as f64 / candidates as f64;
        let Some(h) = cayley(u, phi) else { continue };
        let size = h.norm_inf();
        if size <= bound {
            return finish(u, h, phi);
        }
        if best.as_ref().is_none_or(|b| size < b.0) {
            best = Some((size, phi, h));
        }
    }
    // Only reachable for matrices that are unitary merely to a loose tolerance.
    match best {
        Some((_, phi, h)) => finish(u, h, phi),
        None => Err(Error::NoConvergence { sweeps: candidates, residual: u.as_matrix().unitary_defect() }),
    }
}

/// Same as [`unitary_eig`] with a caller-chosen pre-rotation phase.
pub fn unitary_eig_with_phase(u: &UnitaryMatrix, phi: f64) -> Result<UnitaryEig> {
    match cayley(u, phi) {
        Some(h) => finish(u, h, phi),
        None => Err(Error::Singular { pivot: 0.0, scale: CAYLEY_DET_TOL }),
    }
}

/// Cayley transform of `e^{i phi} U`, or `None` when `I + e^{i phi} U` is singular.
fn cayley(u: &UnitaryMatrix, phi: f64) -> Option<ComplexMatrix> {
    let d = u.dim();
    let rotated = u.as_matrix().scale(Complex64::from_polar(1.0, phi));
    let id = ComplexMatrix::identity(d);
    let plus = &id + &rotated;
    let lu = LuFactors::new(&plus).ok()?;
    if lu.det().norm() < CAYLEY_DET_TOL || lu.check_pivots(1e-13, 1.0).is_err() {
        return None;
    }
    let minus = &id - &rotated;
    let inv = lu.solve_matrix(&id);
    Some((&minus * &inv).scale(Complex64::i()))
}

fn finish(u: &UnitaryMatrix, h: ComplexMatrix, phi: f64) -> Result<UnitaryEig> {
    let d = u.dim();
    let eig = jacobi(&h, ToleranceConfig::default().eig_tol)?;
    let back = Complex64::from_polar(1.0, -phi);
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = eig
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let ix = Complex64::new(0.0, x);
            let mu = (Complex64::new(1.0, 0.0) + ix) / (Complex64::new(1.0, 0.0) - ix) * back;
            let mut col = eig.vectors().column(k);
            normalize_phase(&mut col);
            (mu / mu.norm(), col)
        })
        .collect();
    pairs.sort_by(|a, b| {
        principal_arg(a.0).total_cmp(&principal_arg(b.0)).then_with(|| lex_cmp(&a.1, &b.1))
    });
    let mut vectors = ComplexMatrix::zeros(d, d);
    let mut eigenvalues = Vec::with_capacity(d);
    for (k, (mu, col)) in pairs.into_iter().enumerate() {
        vectors.set_column(k, &col);
        eigenvalues.push(mu);
    }
    Ok(UnitaryEig { eigenvalues, vectors, rotation: phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expm_i_hermitian, herm_eig, HermitianMatrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> HermitianMatrix {
        let g = ComplexMatrix::from_fn(d, d, |_, _| c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)));
        HermitianMatrix::new(g.hermitian_part()).unwrap()
    }

    fn eigen_residual(u: &UnitaryMatrix, e: &UnitaryEig) -> f64 {
        let uv = u.as_matrix() * e.vectors();
        let vm = e.vectors() * &ComplexMatrix::from_diag(e.eigenvalues());
        (&uv - &vm).max_abs()
    }

    #[test]
    fn identity_eigenvalues_are_one() {
        let e = unitary_eig(&UnitaryMatrix::identity(3)).unwrap();
        for mu in e.eigenvalues() {
            assert!((mu - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn diagonal_unitary() {
        let u = UnitaryMatrix::new(ComplexMatrix::from_diag(&[c(0.0, 1.0), c(0.0, -1.0)])).unwrap();
        let e = unitary_eig(&u).unwrap();
        // ascending argument: i (π/2) before -i (3π/2)
        assert!((e.eigenvalues()[0] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((e.eigenvalues()[1] - c(0.0, -1.0)).norm() < 1e-14);
        assert!(eigen_residual(&u, &e) < 1e-13);
    }

    #[test]
    fn minus_one_forces_rotation() {
        let u = UnitaryMatrix::new(ComplexMatrix::from_diag(&[c(-1.0, 0.0), c(1.0, 0.0)])).unwrap();
        let e = unitary_eig(&u).unwrap();
        assert!(e.rotation() != 0.0);
        assert!((e.eigenvalues()[0] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((e.eigenvalues()[1] - c(-1.0, 0.0)).norm() < 1e-13);
        let e = unitary_eig(&UnitaryMatrix::scalar_phase(4, PI)).unwrap();
        for mu in e.eigenvalues() {
            assert!((mu - c(-1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn exponential_of_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for d in 1..=6 {
            let a = random_hermitian(&mut rng, d, 3.0);
            let lam = herm_eig(&a).unwrap();
            let u = expm_i_hermitian(&a, 1.0).unwrap();
            let e = unitary_eig(&u).unwrap();
            let mut expected: Vec<Complex64> = lam.eigenvalues().iter().map(|&x| Complex64::from_polar(1.0, x)).collect();
            expected.sort_by(|a, b| principal_arg(*a).total_cmp(&principal_arg(*b)));
            for (mu, ex) in e.eigenvalues().iter().zip(&expected) {
                assert!((mu - ex).norm() < 1e-8, "{mu} vs {ex}");
                assert!((mu.norm() - 1.0).abs() < 1e-10);
            }
            assert!(eigen_residual(&u, &e) < 1e-9);
            assert!(e.vectors().unitary_defect() < 1e-9);
        }
    }

    #[test]
    fn principal_arg_range() {
        assert_eq!(principal_arg(c(1.0, 0.0)), 0.0);
        assert!((principal_arg(c(0.0, -1.0)) - 1.5 * PI).abs() < 1e-15);
        assert_eq!(principal_arg(c(1.0, -1e-16)), 0.0);
        assert!((principal_arg(c(-1.0, 0.0)) - PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_unitary() {
        match UnitaryMatrix::new(ComplexMatrix::from_real_diag(&[2.0])) {
            Err(Error::NotUnitary { residual, .. }) => assert_eq!(residual, 3.0),
            other => panic!("{other:?}"),
        }
        assert!(UnitaryMatrix::new(ComplexMatrix::zeros(2, 3)).is_err());
    }
}
