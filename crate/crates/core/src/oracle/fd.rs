use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::model::{GridFunction, IntervalId, ProblemDefinition};

/// Stencil order used when residuals are reported rather than merely estimated.
///
/// Second-order differences leave an `O(h²)` floor of about `1e-5` on the default
/// grids, which would hide the actual accuracy of the computed functions.
pub const RESIDUAL_FD_ORDER: usize = 8;

/// Finite-difference weights for derivative `deriv` at `x0` from values at `nodes`
/// (Fornberg's recursion).
pub fn fornberg_weights(x0: f64, nodes: &[f64], deriv: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; deriv + 1]; n];
    if n == 0 {
        return Vec::new();
    }
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(deriv);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[deriv]).collect()
}

/// First derivative of `u` with an `order`-accurate stencil of `order + 1` nodes.
///
/// Stencils are centred where they fit and shifted inwards near the ends, so
/// the order holds at every node.
pub fn differentiate(u: &GridFunction, order: usize) -> Result<GridFunction> {
    if order < 2 || order % 2 == 1 {
        return Err(Error::InvalidParameter { name: "order", reason: "stencil order must be even and at least 2" });
    }
    let m = order + 1;
    let n = u.len();
    if n < m {
        return Err(Error::GridTooShort { len: n, required: m });
    }
    let h = u.step();
    let offsets: Vec<f64> = (0..m).map(|j| j as f64).collect();
    let table: Vec<Vec<f64>> = (0..m)
        .map(|pos| fornberg_weights(pos as f64, &offsets, 1).into_iter().map(|w| w / h).collect())
        .collect();
    let half = order / 2;
    let dim = u.dim();
    Ok(u.like(|k, _, out| {
        let start = k.saturating_sub(half).min(n - m);
        let w = &table[k - start];
        for (j, wj) in w.iter().enumerate() {
            let s = u.sample(start + j);
            for c in 0..dim {
                out[c] += *wj * s[c];
            }
        }
    }))
}

/// `i u' + A u - lambda u` with an `order`-accurate derivative.
pub fn apply_generator(a: &ComplexMatrix, u: &GridFunction, lambda: Complex64, order: usize) -> Result<GridFunction> {
    if a.rows() != u.dim() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: u.dim() });
    }
    let mut du = differentiate(u, order)?;
    let i = Complex64::new(0.0, 1.0);
    for k in 0..u.len() {
        let au = a.matvec(u.sample(k));
        let uk = u.sample(k);
        for (c, out) in du.sample_mut(k).iter_mut().enumerate() {
            *out = i * *out + au[c] - lambda * uk[c];
        }
    }
    Ok(du)
}

/// `i u' + A_k u - lambda u` on interval `id`, second-order differences
/// (one-sided at the ends).
pub fn apply_expression(
    problem: &ProblemDefinition,
    id: IntervalId,
    u: &GridFunction,
    lambda: Complex64,
) -> Result<GridFunction> {
    apply_expression_with_order(problem, id, u, lambda, 2)
}

pub fn apply_expression_with_order(
    problem: &ProblemDefinition,
    id: IntervalId,
    u: &GridFunction,
    lambda: Complex64,
    order: usize,
) -> Result<GridFunction> {
    if u.interval() != id {
        return Err(Error::GridMismatch);
    }
    apply_generator(problem.generator(id).as_matrix(), u, lambda, order)
}
