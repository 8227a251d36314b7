use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, HermitianMatrix};

fn generator(a2: &HermitianMatrix, lambda: Complex64) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let d = a2.dim();
    ComplexMatrix::from_fn(d, d, |r, c| {
        let shift = if r == c { lambda } else { Complex64::new(0.0, 0.0) };
        i * (a2.as_matrix()[(r, c)] - shift)
    })
}

/// Fundamental matrix of `Φ' = i(A2 - lambda)Φ`, `Φ(0) = I`, at `delta`, by
/// `steps` classical RK4 steps applied stage by stage.
pub fn rk4_fundamental(a2: &HermitianMatrix, lambda: Complex64, delta: f64, steps: usize) -> ComplexMatrix {
    let b = generator(a2, lambda);
    let h = delta / steps.max(1) as f64;
    let half = Complex64::new(h / 2.0, 0.0);
    let full = Complex64::new(h, 0.0);
    let sixth = Complex64::new(h / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let mut phi = ComplexMatrix::identity(a2.dim());
    for _ in 0..steps.max(1) {
        let k1 = &b * &phi;
        let k2 = &b * &(&phi + &k1.scale(half));
        let k3 = &b * &(&phi + &k2.scale(half));
        let k4 = &b * &(&phi + &k3.scale(full));
        let incr = &(&(&k1 + &k2.scale(two)) + &k3.scale(two)) + &k4;
        phi = &phi + &incr.scale(sixth);
    }
    phi
}

/// One RK4 step for a constant-coefficient linear system is multiplication by
/// `P = I + hB + (hB)²/2 + (hB)³/6 + (hB)⁴/24` with `B = i(A2 - lambda)`.
pub fn rk4_step_matrix(a2: &HermitianMatrix, lambda: Complex64, h: f64) -> ComplexMatrix {
    let hb = generator(a2, lambda).scale(Complex64::new(h, 0.0));
    let d = a2.dim();
    // Horner: I + hB(I + hB/2(I + hB/3(I + hB/4))).
    let mut acc = ComplexMatrix::identity(d);
    for k in [4.0, 3.0, 2.0, 1.0] {
        acc = &ComplexMatrix::identity(d) + &(&hb * &acc).scale(Complex64::new(1.0 / k, 0.0));
    }
    acc
}

/// Same propagator as [`rk4_fundamental`] (equal in exact arithmetic), computed as
/// `P^steps` by repeated squaring. Used by the sweep, which needs thousands of
/// evaluations.
pub fn rk4_fundamental_powered(a2: &HermitianMatrix, lambda: Complex64, delta: f64, steps: usize) -> ComplexMatrix {
    let steps = steps.max(1);
    let mut base = rk4_step_matrix(a2, lambda, delta / steps as f64);
    let mut result = ComplexMatrix::identity(a2.dim());
    let mut e = steps;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> HermitianMatrix {
        let m = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        HermitianMatrix::new(m.hermitian_part()).unwrap()
    }

    #[test]
    fn zero_generator_is_identity() {
        let a = HermitianMatrix::zeros(2);
        let phi = rk4_fundamental(&a, Complex64::new(0.0, 0.0), 1.0, 10);
        assert_eq!(phi, ComplexMatrix::identity(2));
    }

    #[test]
    fn scalar_exponential() {
        let (alpha, lambda, delta) = (1.7, 0.3, 1.2);
        let a = HermitianMatrix::from_real_diag(&[alpha]);
        let exact = Complex64::from_polar(1.0, (alpha - lambda) * delta);
        let err = |steps| (rk4_fundamental(&a, Complex64::new(lambda, 0.0), delta, steps)[(0, 0)] - exact).norm();
        // Global RK4 error is about delta·(ωh)⁴·ω/120.
        assert!(err(64) < 1e-8);
        let ratio = err(32) / err(64);
        assert!((ratio - 16.0).abs() < 0.5, "ratio {ratio}");
    }

    #[test]
    fn fourth_order_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian(&mut rng, 3);
        let lambda = Complex64::new(0.6, 0.0);
        let fine = rk4_fundamental(&a, lambda, 1.0, 4096);
        let e1 = (&rk4_fundamental(&a, lambda, 1.0, 32) - &fine).max_abs();
        let e2 = (&rk4_fundamental(&a, lambda, 1.0, 64) - &fine).max_abs();
        let ratio = e1 / e2;
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn powered_matches_stagewise() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_hermitian(&mut rng, 4);
        let lambda = Complex64::new(-2.0, 0.0);
        for steps in [1usize, 7, 64, 100] {
            let x = rk4_fundamental(&a, lambda, 0.8, steps);
            let y = rk4_fundamental_powered(&a, lambda, 0.8, steps);
            assert!((&x - &y).max_abs() < 1e-12, "steps {steps}");
        }
    }

    #[test]
    fn determinant_stays_on_unit_circle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let a = random_hermitian(&mut rng, 3);
            let lambda = Complex64::new(rng.gen_range(-3.0..3.0), 0.0);
            let phi = rk4_fundamental(&a, lambda, 1.5, 256);
            assert!((det(&phi).unwrap().norm() - 1.0).abs() < 1e-8);
            assert!((&(&phi.adjoint() * &phi) - &ComplexMatrix::identity(3)).max_abs() < 1e-7);
        }
    }
}
