//! Boundary-value maps for the two components of the operator.
//!
//! Half-lines: with `x = u1(a1)` and `x' = u3(a3)`,
//! `gamma1 = (x + x') / (i√2)` and `gamma2 = (x - x') / √2`.
//! Finite interval: the same formulas with `x = u2(a2)`, `x' = u2(b2)`.
//!
//! For `L u = i u' + A u` and the inner product `(p, q) = Σ p_k conj(q_k)`,
//! integration by parts gives
//!
//! * finite interval: `<Lu, v> - <u, Lv> = (G1 u, G2 v) - (G2 u, G1 v)`,
//! * half-lines: `<Lu, v> - <u, Lv> = -[(g1 u, g2 v) - (g2 u, g1 v)]`,
//!
//! the sign flip coming from `u1` being evaluated at the right end of its
//! interval and `u3` at the left end. [`green_defect`] measures the deviation
//! from these identities.

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{vec_inner, vec_norm, UnitaryMatrix};
use crate::model::{grid_inner_product, make_grid, IntervalId, ProblemDefinition, TripleFunction};
use crate::oracle::apply_expression_with_order;

/// Image `(first, second)` of one boundary map.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPair {
    pub first: Vec<Complex64>,
    pub second: Vec<Complex64>,
}

/// Both boundary pairs of a triple; a pair is absent when its parts are.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryValues {
    pub outer: Option<BoundaryPair>,
    pub inner: Option<BoundaryPair>,
}

/// Which component's boundary triplet to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triplet {
    Outer,
    Inner,
}

fn pair_from_ends(x: &[Complex64], xp: &[Complex64]) -> BoundaryPair {
    let to_i = Complex64::new(0.0, -1.0 / SQRT_2); // 1 / (i√2)
    BoundaryPair {
        first: x.iter().zip(xp).map(|(a, b)| (a + b) * to_i).collect(),
        second: x.iter().zip(xp).map(|(a, b)| (a - b) / SQRT_2).collect(),
    }
}

/// `(gamma1, gamma2)` from `u1(a1)` and `u3(a3)`.
pub fn outer_gamma(u: &TripleFunction) -> Result<BoundaryPair> {
    let left = u.require(IntervalId::OuterLeft)?;
    let right = u.require(IntervalId::OuterRight)?;
    Ok(pair_from_ends(left.last(), right.first()))
}

/// `(Gamma1, Gamma2)` from `u2(a2)` and `u2(b2)`.
pub fn inner_gamma(u: &TripleFunction) -> Result<BoundaryPair> {
    let inner = u.require(IntervalId::Inner)?;
    Ok(pair_from_ends(inner.first(), inner.last()))
}

pub fn boundary_values(u: &TripleFunction) -> BoundaryValues {
    BoundaryValues { outer: outer_gamma(u).ok(), inner: inner_gamma(u).ok() }
}

/// End values `(x, x')` with `gamma1 = f`, `gamma2 = g`:
/// `x = (i f + g)/√2`, `x' = (i f - g)/√2`.
fn preimage(f: &[Complex64], g: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let i = Complex64::i();
    let x = f.iter().zip(g).map(|(a, b)| (i * a + b) / SQRT_2).collect();
    let xp = f.iter().zip(g).map(|(a, b)| (i * a - b) / SQRT_2).collect();
    (x, xp)
}

fn check_len(problem: &ProblemDefinition, v: &[Complex64]) -> Result<()> {
    if v.len() != problem.dim() {
        return Err(Error::DimensionMismatch { expected: problem.dim(), found: v.len() });
    }
    Ok(())
}

/// Triple with outer boundary values `(f, g)`:
/// `u1(t) = e^{t - a1}(i f + g)/√2`, `u2 = 0`, `u3(t) = e^{a3 - t}(i f - g)/√2`.
pub fn construct_witness(f: &[Complex64], g: &[Complex64], problem: &ProblemDefinition) -> Result<TripleFunction> {
    check_len(problem, f)?;
    check_len(problem, g)?;
    let (x, xp) = preimage(f, g);
    let iv = *problem.intervals();
    let u1 = make_grid(IntervalId::OuterLeft, problem).like(|_, t, out| {
        let s = Float::exp(t - iv.a1());
        for (o, v) in out.iter_mut().zip(&x) {
            *o = v * s;
        }
    });
    let u3 = make_grid(IntervalId::OuterRight, problem).like(|_, t, out| {
        let s = Float::exp(iv.a3() - t);
        for (o, v) in out.iter_mut().zip(&xp) {
            *o = v * s;
        }
    });
    TripleFunction::new(Some(u1), Some(make_grid(IntervalId::Inner, problem)), Some(u3))
}

/// Inner-only triple with `(Gamma1, Gamma2) = (f, g)`: the straight line from
/// `(i f + g)/√2` at `a2` to `(i f - g)/√2` at `b2`.
pub fn construct_inner_witness(f: &[Complex64], g: &[Complex64], problem: &ProblemDefinition) -> Result<TripleFunction> {
    check_len(problem, f)?;
    check_len(problem, g)?;
    let (x, xp) = preimage(f, g);
    let grid = make_grid(IntervalId::Inner, problem);
    let n = grid.len();
    let u2 = grid.like(|k, _, out| {
        // Blend by node index so both ends are reproduced exactly.
        let s = k as f64 / (n - 1) as f64;
        for ((o, a), b) in out.iter_mut().zip(&x).zip(&xp) {
            *o = a * (1.0 - s) + b * s;
        }
    });
    TripleFunction::inner_only(u2)
}

/// `|<Lu, v> - <u, Lv> - boundary form|` for the chosen triplet, with `L u`
/// from second-order differences.
pub fn green_defect(u: &TripleFunction, v: &TripleFunction, problem: &ProblemDefinition, which: Triplet) -> Result<f64> {
    green_defect_with_order(u, v, problem, which, 2)
}

/// [`green_defect`] with a finite-difference stencil of the given even order.
pub fn green_defect_with_order(
    u: &TripleFunction,
    v: &TripleFunction,
    problem: &ProblemDefinition,
    which: Triplet,
    order: usize,
) -> Result<f64> {
    let (ids, pu, pv, sign): (&[IntervalId], _, _, f64) = match which {
        Triplet::Outer => (&[IntervalId::OuterLeft, IntervalId::OuterRight], outer_gamma(u)?, outer_gamma(v)?, -1.0),
        Triplet::Inner => (&[IntervalId::Inner], inner_gamma(u)?, inner_gamma(v)?, 1.0),
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut lhs = zero;
    for &id in ids {
        let (a, b) = (u.require(id)?, v.require(id)?);
        if !a.same_grid(b) {
            return Err(Error::GridMismatch);
        }
        let la = apply_expression_with_order(problem, id, a, zero, order)?;
        let lb = apply_expression_with_order(problem, id, b, zero, order)?;
        lhs += grid_inner_product(&la, b)? - grid_inner_product(a, &lb)?;
    }
    let form = vec_inner(&pu.first, &pv.second) - vec_inner(&pu.second, &pv.first);
    Ok((lhs - form * sign).norm())
}

/// `||u3(a3) - W1 u1(a1)||` read directly from the samples.
pub fn outer_condition_residual(u: &TripleFunction, w1: &UnitaryMatrix) -> Result<f64> {
    let left = u.require(IntervalId::OuterLeft)?;
    let right = u.require(IntervalId::OuterRight)?;
    let w = w1.as_matrix().matvec(left.last());
    Ok(vec_norm(&right.first().iter().zip(&w).map(|(a, b)| a - b).collect::<Vec<_>>()))
}

/// The same condition written through the boundary pair:
/// `||((I - W) i gamma1 - (I + W) gamma2)|| / √2`.
pub fn condition_residual_from_pair(pair: &BoundaryPair, w: &UnitaryMatrix) -> f64 {
    let i = Complex64::i();
    let ig: Vec<Complex64> = pair.first.iter().map(|z| i * z).collect();
    let w_ig = w.as_matrix().matvec(&ig);
    let w_g = w.as_matrix().matvec(&pair.second);
    let r: Vec<Complex64> = (0..ig.len()).map(|k| (ig[k] - w_ig[k]) - (pair.second[k] + w_g[k])).collect();
    vec_norm(&r) / SQRT_2
}

/// `||u2(b2) - W2 u2(a2)||` read directly from the samples.
pub fn inner_condition_residual(u: &TripleFunction, w2: &UnitaryMatrix) -> Result<f64> {
    let inner = u.require(IntervalId::Inner)?;
    let w = w2.as_matrix().matvec(inner.first());
    Ok(vec_norm(&inner.last().iter().zip(&w).map(|(a, b)| a - b).collect::<Vec<_>>()))
}
