use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::{lex_cmp, normalize_phase};
use crate::error::{Error, Result};
use crate::model::ToleranceConfig;

const MAX_SWEEPS: usize = 64;

/// Square complex matrix equal to its conjugate transpose within
/// `hermitian_tol * (1 + max|M|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::new_with_tol(m, ToleranceConfig::default().hermitian_tol)
    }

    pub fn new_with_tol(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { name: "matrix" });
        }
        let residual = m.hermitian_defect();
        if residual > tol * (1.0 + m.max_abs()) {
            return Err(Error::NotHermitian { name: "matrix", residual });
        }
        Ok(Self(m))
    }

    pub fn zeros(d: usize) -> Self {
        Self(ComplexMatrix::zeros(d, d))
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diag(diag))
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

    /// `A - shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut m = self.0.clone();
        for k in 0..self.dim() {
            m[(k, k)] -= Complex64::new(shift, 0.0);
        }
        Self(m)
    }
}

/// Spectral decomposition `A = V diag(eigenvalues) V^*`, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEig {
    eigenvalues: Vec<f64>,
    vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column eigenvectors, each phase-normalized.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(f(eigenvalue)) V^*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let d = self.dim();
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(d, d, |r, c| {
            (0..d).map(|k| self.vectors[(r, k)] * weights[k] * self.vectors[(c, k)].conj()).sum()
        })
    }

    /// `e^{i(A - lambda) tau}`, the propagator of `i u' + A u = lambda u`.
    pub fn propagator(&self, lambda: Complex64, tau: f64) -> ComplexMatrix {
        self.map_spectrum(|a| (Complex64::i() * (Complex64::new(a, 0.0) - lambda) * tau).exp())
    }

    /// `e^{i(A - lambda) tau} v` evaluated in the eigenbasis.
    pub fn propagate(&self, lambda: Complex64, tau: f64, v: &[Complex64]) -> Vec<Complex64> {
        let mut coeffs = self.vectors.adjoint_matvec(v);
        for (w, &a) in coeffs.iter_mut().zip(&self.eigenvalues) {
            *w *= (Complex64::i() * (Complex64::new(a, 0.0) - lambda) * tau).exp();
        }
        self.vectors.matvec(&coeffs)
    }
}

/// Cyclic complex Jacobi eigensolver for a Hermitian matrix.
pub fn herm_eig(a: &HermitianMatrix) -> Result<HermitianEig> {
    herm_eig_with(a, &ToleranceConfig::default())
}

pub fn herm_eig_with(a: &HermitianMatrix, tol: &ToleranceConfig) -> Result<HermitianEig> {
    jacobi(a.as_matrix(), tol.eig_tol)
}

/// Jacobi sweeps on the Hermitian part of `m`. Converged when the off-diagonal
/// Frobenius mass drops to `eig_tol * ||m||_F`.
pub(crate) fn jacobi(m: &ComplexMatrix, eig_tol: f64) -> Result<HermitianEig> {
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = eig_tol * a.frobenius();

    let mut converged = false;
    let mut off = off_diagonal_mass(&a);
    for _ in 0..MAX_SWEEPS {
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_mass(&a);
    }
    if !converged && off > target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, residual: off });
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut col = v.column(k);
            normalize_phase(&mut col);
            (a[(k, k)].re, col)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| lex_cmp(&x.1, &y.1)));

    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (k, (lambda, col)) in pairs.into_iter().enumerate() {
        vectors.set_column(k, &col);
        eigenvalues.push(lambda);
    }
    Ok(HermitianEig { eigenvalues, vectors })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilate `a[p][q]` with the unitary `J = D R D^*`, where `D` moves the phase of
/// `a[p][q]` out of the way and `R` is the classical real Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let jpp = Complex64::new(cs, 0.0);
    let jqq = jpp;
    let jpq = phase * sn;
    let jqp = -phase.conj() * sn;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> HermitianMatrix {
        let g = ComplexMatrix::from_fn(d, d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        HermitianMatrix::new(g.hermitian_part()).unwrap()
    }

    /// `det(A - x I)` is real for Hermitian `A`; its sign changes bracket eigenvalues.
    fn char_poly(a: &HermitianMatrix, x: f64) -> f64 {
        det(a.shifted(x).as_matrix()).unwrap().re
    }

    fn char_poly_roots(a: &HermitianMatrix) -> Vec<f64> {
        let bound = a.as_matrix().norm_inf() + 1.0;
        let steps = 20_000;
        let h = 2.0 * bound / steps as f64;
        let mut roots = Vec::new();
        let mut x0 = -bound;
        let mut f0 = char_poly(a, x0);
        for k in 1..=steps {
            let x1 = -bound + k as f64 * h;
            let f1 = char_poly(a, x1);
            if f0 * f1 < 0.0 {
                let (mut lo, mut hi, mut flo) = (x0, x1, f0);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    let fm = char_poly(a, mid);
                    if fm * flo <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            x0 = x1;
            f0 = f1;
        }
        roots
    }

    fn reconstruction_residual(a: &HermitianMatrix, e: &HermitianEig) -> f64 {
        let av = a.as_matrix() * e.vectors();
        let vl = e.vectors() * &ComplexMatrix::from_real_diag(e.eigenvalues());
        (&av - &vl).max_abs()
    }

    #[test]
    fn diagonal_input() {
        let e = herm_eig(&HermitianMatrix::from_real_diag(&[1.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues(), &[1.0, 2.0]);
        assert_eq!(e.vectors(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn pauli_x() {
        let m = ComplexMatrix::from_row_major(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let a = HermitianMatrix::new(m).unwrap();
        let e = herm_eig(&a).unwrap();
        assert!((e.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues()[1] - 1.0).abs() < 1e-15);
        assert!(reconstruction_residual(&a, &e) < 1e-14);
    }

    #[test]
    fn matches_characteristic_polynomial_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let a = random_hermitian(&mut rng, 4);
            let roots = char_poly_roots(&a);
            assert_eq!(roots.len(), 4);
            let e = herm_eig(&a).unwrap();
            for (x, r) in e.eigenvalues().iter().zip(&roots) {
                assert!((x - r).abs() < 1e-10, "{x} vs {r}");
            }
        }
    }

    #[test]
    fn complex_entries_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 1..=12 {
            let a = random_hermitian(&mut rng, d);
            let e = herm_eig(&a).unwrap();
            let scale = 1.0 + a.as_matrix().max_abs();
            assert!(reconstruction_residual(&a, &e) <= 1e-10 * scale);
            assert!(e.vectors().unitary_defect() <= 1e-10);
            assert!(e.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_major(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        match HermitianMatrix::new(m) {
            Err(Error::NotHermitian { residual, .. }) => assert_eq!(residual, 1.0),
            other => panic!("{other:?}"),
        }
        let im_diag = ComplexMatrix::from_diag(&[c(1.0, 1.0)]);
        assert!(HermitianMatrix::new(im_diag).is_err());
    }

    #[test]
    fn zero_and_degenerate() {
        let e = herm_eig(&HermitianMatrix::zeros(3)).unwrap();
        assert_eq!(e.eigenvalues(), &[0.0, 0.0, 0.0]);
        let e = herm_eig(&HermitianMatrix::from_real_diag(&[2.0, 2.0, -1.0])).unwrap();
        assert_eq!(e.eigenvalues(), &[-1.0, 2.0, 2.0]);
    }

    #[test]
    fn propagator_matches_spectral_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = random_hermitian(&mut rng, 3);
        let e = herm_eig(&a).unwrap();
        let v = vec![c(1.0, 0.0), c(0.0, 1.0), c(0.5, -0.5)];
        let lam = c(0.3, 0.2);
        let direct = e.propagator(lam, 0.7).matvec(&v);
        let fast = e.propagate(lam, 0.7, &v);
        for (x, y) in direct.iter().zip(&fast) {
            assert!((x - y).norm() < 1e-14);
        }
    }
}
