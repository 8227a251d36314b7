use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::grid::{GridFunction, TripleFunction};

/// Quadrature weights for `n` equally spaced nodes with step `h`.
///
/// Composite Simpson for odd `n`. For even `n` the last four nodes use the
/// 3/8 rule; `n = 2` is the trapezoid rule.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    match n {
        0 | 1 => {}
        2 => {
            w[0] = h / 2.0;
            w[1] = h / 2.0;
        }
        _ if n % 2 == 1 => add_simpson(&mut w[..], h),
        3 => unreachable!(),
        _ => {
            // n even, n >= 4: Simpson on the first n - 3 nodes, 3/8 on the last 4.
            if n > 4 {
                add_simpson(&mut w[..n - 3], h);
            }
            let c = 3.0 * h / 8.0;
            w[n - 4] += c;
            w[n - 3] += 3.0 * c;
            w[n - 2] += 3.0 * c;
            w[n - 1] += c;
        }
    }
    w
}

fn add_simpson(w: &mut [f64], h: f64) {
    let n = w.len();
    let c = h / 3.0;
    w[0] += c;
    w[n - 1] += c;
    for (k, wk) in w.iter_mut().enumerate().take(n - 1).skip(1) {
        *wk += if k % 2 == 1 { 4.0 * c } else { 2.0 * c };
    }
}

/// `∫ (u(t), v(t)) dt` over one grid, with `(x, y) = Σ x_k conj(y_k)`.
///
/// Real and imaginary parts are accumulated separately from products that are
/// symmetric under swapping `u` and `v`, so `<u, v>` and `conj(<v, u>)` agree bit
/// for bit.
pub fn grid_inner_product(u: &GridFunction, v: &GridFunction) -> Result<Complex64> {
    if !u.same_grid(v) {
        return Err(Error::GridMismatch);
    }
    let w = simpson_weights(u.len(), u.step());
    let (mut re, mut im) = (0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        let (mut sr, mut si) = (0.0, 0.0);
        for (a, b) in u.sample(k).iter().zip(v.sample(k)) {
            sr += a.re * b.re + a.im * b.im;
            si += a.im * b.re - a.re * b.im;
        }
        re += wk * sr;
        im += wk * si;
    }
    Ok(Complex64::new(re, im))
}

/// `L²` inner product of two triples, summed over the parts both carry.
///
/// A part present in one argument and absent in the other contributes zero
/// (the absent part is the zero function).
pub fn l2_inner_product(u: &TripleFunction, v: &TripleFunction) -> Result<Complex64> {
    if let (Some(du), Some(dv)) = (u.dim(), v.dim()) {
        if du != dv {
            return Err(Error::DimensionMismatch { expected: du, found: dv });
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for id in super::IntervalId::ALL {
        if let (Some(a), Some(b)) = (u.part(id), v.part(id)) {
            acc += grid_inner_product(a, b)?;
        }
    }
    Ok(acc)
}

/// `sqrt(<u, u>)`.
pub fn l2_norm(u: &TripleFunction) -> f64 {
    use num_traits::Float;
    l2_inner_product(u, u).map(|z| Float::sqrt(z.re.max(0.0))).unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::IntervalId;

    fn inner(n: usize, f: impl Fn(f64) -> Complex64) -> TripleFunction {
        let g = GridFunction::from_fn(IntervalId::Inner, 0.0, 1.0, n, 1, |t, out| out[0] = f(t)).unwrap();
        TripleFunction::inner_only(g).unwrap()
    }

    #[test]
    fn zero_function() {
        let u = inner(11, |_| Complex64::new(0.0, 0.0));
        assert_eq!(l2_inner_product(&u, &u).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn constant_one() {
        let u = inner(11, |_| Complex64::new(1.0, 0.0));
        assert!((l2_inner_product(&u, &u).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn identity_squared() {
        let u = inner(101, |t| Complex64::new(t, 0.0));
        assert!((l2_inner_product(&u, &u).unwrap() - 1.0 / 3.0).norm() < 1e-10);
    }

    #[test]
    fn even_counts_integrate_cubics_exactly() {
        for n in [2usize, 4, 6, 10] {
            let w = simpson_weights(n, 1.0 / (n - 1) as f64);
            let s: f64 = w.iter().enumerate().map(|(k, wk)| {
                let t = k as f64 / (n - 1) as f64;
                wk * if n == 2 { t } else { t * t * t }
            }).sum();
            let exact = if n == 2 { 0.5 } else { 0.25 };
            assert!((s - exact).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        let u = inner(9, |t| Complex64::new(t.sin(), 0.3 * t));
        let v = inner(9, |t| Complex64::new(1.0 - t, t * t));
        let uv = l2_inner_product(&u, &v).unwrap();
        let vu = l2_inner_product(&v, &u).unwrap();
        assert_eq!(uv, vu.conj());
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let u = inner(9, |_| Complex64::new(1.0, 0.0));
        let v = inner(11, |_| Complex64::new(1.0, 0.0));
        assert_eq!(l2_inner_product(&u, &v), Err(Error::GridMismatch));
    }
}
