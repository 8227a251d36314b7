#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use multipoint_core::linalg::{herm_eig, ComplexMatrix, HermitianMatrix, UnitaryMatrix};
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

fn rmatrix(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Random Hermitian matrix with spectral norm exactly `norm`.
pub fn hermitian_with_norm(rng: &mut ChaCha8Rng, d: usize, norm: f64) -> HermitianMatrix {
    let h = HermitianMatrix::new(rmatrix(rng, d).hermitian_part()).unwrap();
    let top = herm_eig(&h).unwrap().eigenvalues().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if top == 0.0 {
        return h;
    }
    HermitianMatrix::new(h.as_matrix().scale(c(norm / top, 0.0))).unwrap()
}

/// Gram-Schmidt (twice) on a random complex matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> UnitaryMatrix {
    let g = rmatrix(rng, d);
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

/// Random problem with `||Ak|| <= a_norm` and inner length `delta`.
pub fn random_problem(rng: &mut ChaCha8Rng, d: usize, a_norm: f64, delta: f64) -> ProblemDefinition {
    let a2 = -0.25;
    let iv = IntervalConfig::new(-1.0, a2, a2 + delta, a2 + delta + 0.75).unwrap();
    let herm = |r: &mut ChaCha8Rng| {
        let norm = r.gen_range(0.0..=a_norm);
        hermitian_with_norm(r, d, norm)
    };
    let (m1, m2, m3) = (herm(rng), herm(rng), herm(rng));
    ProblemDefinition::new(iv, m1, m2, m3, random_unitary(rng, d), random_unitary(rng, d), ToleranceConfig::default())
        .unwrap()
}

pub fn multipoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multipoint")).args(args).output().expect("spawn multipoint")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}
