#![allow(dead_code)]

use multipoint_core::linalg::{expm_i_hermitian, ComplexMatrix, HermitianMatrix, UnitaryMatrix};
use multipoint_core::model::{IntervalConfig, ProblemDefinition, ToleranceConfig};
use multipoint_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rvec(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

pub fn rmatrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Hermitian matrix rescaled to spectral norm `norm` (largest |eigenvalue|).
pub fn hermitian_with_norm(rng: &mut ChaCha8Rng, d: usize, norm: f64) -> HermitianMatrix {
    let h = HermitianMatrix::new(rmatrix(rng, d, d).hermitian_part()).unwrap();
    let e = multipoint_core::linalg::herm_eig(&h).unwrap();
    let top = e.eigenvalues().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if top == 0.0 {
        return h;
    }
    HermitianMatrix::new(h.as_matrix().scale(c(norm / top, 0.0))).unwrap()
}

/// Haar-like unitary: Gram-Schmidt on a random complex matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> UnitaryMatrix {
    let g = rmatrix(rng, d, d);
    let mut q = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        let mut v = g.column(j);
        for _ in 0..2 {
            for k in 0..j {
                let qk = q.column(k);
                let proj: Complex64 = qk.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(&qk) {
                    *x -= proj * y;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= n;
        }
        q.set_column(j, &v);
    }
    UnitaryMatrix::new(q).unwrap()
}

pub fn unitary_from_exp(rng: &mut ChaCha8Rng, d: usize) -> UnitaryMatrix {
    expm_i_hermitian(&hermitian_with_norm(rng, d, 3.0), 1.0).unwrap()
}

/// Problem with random data; `inner` sets `b2 - a2`.
pub fn random_problem(rng: &mut ChaCha8Rng, d: usize, a_norm: f64, inner: f64) -> ProblemDefinition {
    let a2 = -0.25;
    let iv = IntervalConfig::new(-1.0, a2, a2 + inner, a2 + inner + 0.75).unwrap();
    ProblemDefinition::new(
        iv,
        hermitian_with_norm(rng, d, a_norm),
        hermitian_with_norm(rng, d, a_norm),
        hermitian_with_norm(rng, d, a_norm),
        random_unitary(rng, d),
        random_unitary(rng, d),
        ToleranceConfig::default(),
    )
    .unwrap()
}
