use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One of the three intervals `(-inf, a1)`, `(a2, b2)`, `(a3, +inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntervalId {
    OuterLeft,
    Inner,
    OuterRight,
}

impl IntervalId {
    pub const ALL: [IntervalId; 3] = [IntervalId::OuterLeft, IntervalId::Inner, IntervalId::OuterRight];

    pub fn as_str(self) -> &'static str {
        match self {
            IntervalId::OuterLeft => "outer_left",
            IntervalId::Inner => "inner",
            IntervalId::OuterRight => "outer_right",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "outer_left" => Some(IntervalId::OuterLeft),
            "inner" => Some(IntervalId::Inner),
            "outer_right" => Some(IntervalId::OuterRight),
            _ => None,
        }
    }
}

impl fmt::Display for IntervalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `C^d`-valued function sampled on a uniform grid.
///
/// Only the endpoints and the node count are stored; the step is derived, and the
/// last node returns `t_end` exactly rather than an accumulated sum.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    interval: IntervalId,
    t_start: f64,
    t_end: f64,
    len: usize,
    dim: usize,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn zeros(interval: IntervalId, t_start: f64, t_end: f64, len: usize, dim: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::GridTooShort { len, required: 2 });
        }
        if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
            return Err(Error::InvalidParameter { name: "grid", reason: "endpoints must be finite and increasing" });
        }
        Ok(Self { interval, t_start, t_end, len, dim, samples: vec![Complex64::new(0.0, 0.0); len * dim] })
    }

    /// Sample `f(t, out)` at every node.
    pub fn from_fn(
        interval: IntervalId,
        t_start: f64,
        t_end: f64,
        len: usize,
        dim: usize,
        mut f: impl FnMut(f64, &mut [Complex64]),
    ) -> Result<Self> {
        let mut g = Self::zeros(interval, t_start, t_end, len, dim)?;
        for k in 0..len {
            let t = g.node(k);
            f(t, g.sample_mut(k));
        }
        Ok(g)
    }

    /// Same grid as `self`, new values.
    pub fn like(&self, mut f: impl FnMut(usize, f64, &mut [Complex64])) -> Self {
        let mut g = self.zeroed();
        for k in 0..g.len {
            let t = g.node(k);
            f(k, t, g.sample_mut(k));
        }
        g
    }

    pub fn zeroed(&self) -> Self {
        Self { samples: vec![Complex64::new(0.0, 0.0); self.samples.len()], ..self.clone() }
    }

    /// Build from per-node vectors.
    pub fn from_samples(
        interval: IntervalId,
        t_start: f64,
        t_end: f64,
        dim: usize,
        nodes: &[Vec<Complex64>],
    ) -> Result<Self> {
        let mut g = Self::zeros(interval, t_start, t_end, nodes.len(), dim)?;
        for (k, v) in nodes.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            g.sample_mut(k).copy_from_slice(v);
        }
        Ok(g)
    }

    pub fn interval(&self) -> IntervalId {
        self.interval
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step(&self) -> f64 {
        (self.t_end - self.t_start) / (self.len - 1) as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        if k + 1 == self.len {
            self.t_end
        } else {
            self.t_start + k as f64 * self.step()
        }
    }

    pub fn sample(&self, k: usize) -> &[Complex64] {
        &self.samples[k * self.dim..(k + 1) * self.dim]
    }

    pub fn sample_mut(&mut self, k: usize) -> &mut [Complex64] {
        &mut self.samples[k * self.dim..(k + 1) * self.dim]
    }

    pub fn first(&self) -> &[Complex64] {
        self.sample(0)
    }

    pub fn last(&self) -> &[Complex64] {
        self.sample(self.len - 1)
    }

    /// Flat node-major sample storage.
    pub fn values(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.interval == other.interval
            && self.t_start == other.t_start
            && self.t_end == other.t_end
            && self.len == other.len
            && self.dim == other.dim
    }

    /// `self += alpha * other` on a shared grid.
    pub fn axpy(&mut self, alpha: Complex64, other: &GridFunction) -> Result<()> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        for (a, b) in self.samples.iter_mut().zip(&other.samples) {
            *a += alpha * b;
        }
        Ok(())
    }

    pub fn scale(&mut self, alpha: Complex64) {
        for z in &mut self.samples {
            *z *= alpha;
        }
    }

    /// `max_k ||u(t_k)||`.
    pub fn sup_norm(&self) -> f64 {
        (0..self.len).map(|k| crate::linalg::vec_norm(self.sample(k))).fold(0.0, f64::max)
    }
}

/// Element of `L²(-inf, a1) ⊕ L²(a2, b2) ⊕ L²(a3, +inf)`; absent parts are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleFunction {
    parts: [Option<GridFunction>; 3],
}

impl TripleFunction {
    pub fn new(
        left: Option<GridFunction>,
        inner: Option<GridFunction>,
        right: Option<GridFunction>,
    ) -> Result<Self> {
        let parts = [left, inner, right];
        let mut dim = None;
        for (id, part) in IntervalId::ALL.iter().zip(&parts) {
            if let Some(g) = part {
                if g.interval() != *id {
                    return Err(Error::GridMismatch);
                }
                match dim {
                    None => dim = Some(g.dim()),
                    Some(d) if d != g.dim() => return Err(Error::DimensionMismatch { expected: d, found: g.dim() }),
                    _ => {}
                }
            }
        }
        Ok(Self { parts })
    }

    pub fn outer(left: GridFunction, right: GridFunction) -> Result<Self> {
        Self::new(Some(left), None, Some(right))
    }

    pub fn inner_only(inner: GridFunction) -> Result<Self> {
        Self::new(None, Some(inner), None)
    }

    pub fn part(&self, id: IntervalId) -> Option<&GridFunction> {
        self.parts[id as usize].as_ref()
    }

    pub fn part_mut(&mut self, id: IntervalId) -> Option<&mut GridFunction> {
        self.parts[id as usize].as_mut()
    }

    pub fn require(&self, id: IntervalId) -> Result<&GridFunction> {
        self.part(id).ok_or(Error::MissingPart { part: id })
    }

    pub fn left(&self) -> Option<&GridFunction> {
        self.part(IntervalId::OuterLeft)
    }

    pub fn inner(&self) -> Option<&GridFunction> {
        self.part(IntervalId::Inner)
    }

    pub fn right(&self) -> Option<&GridFunction> {
        self.part(IntervalId::OuterRight)
    }

    pub fn parts(&self) -> impl Iterator<Item = &GridFunction> {
        self.parts.iter().flatten()
    }

    pub fn dim(&self) -> Option<usize> {
        self.parts().next().map(GridFunction::dim)
    }

    /// `self += alpha * other`; both must carry the same parts on the same grids.
    pub fn axpy(&mut self, alpha: Complex64, other: &TripleFunction) -> Result<()> {
        for (a, b) in self.parts.iter_mut().zip(&other.parts) {
            match (a, b) {
                (Some(x), Some(y)) => x.axpy(alpha, y)?,
                (None, None) => {}
                _ => return Err(Error::GridMismatch),
            }
        }
        Ok(())
    }

    pub fn scale(&mut self, alpha: Complex64) {
        for p in self.parts.iter_mut().flatten() {
            p.scale(alpha);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g = GridFunction::zeros(IntervalId::OuterLeft, -0.1 - 40.0, -0.1, 801, 2).unwrap();
        assert_eq!(g.node(800), -0.1);
        assert_eq!(g.node(0), -40.1);
        assert_eq!(g.values().len(), 1602);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(matches!(
            GridFunction::zeros(IntervalId::Inner, 0.0, 1.0, 1, 1),
            Err(Error::GridTooShort { .. })
        ));
        assert!(GridFunction::zeros(IntervalId::Inner, 1.0, 1.0, 3, 1).is_err());
    }

    #[test]
    fn triple_checks_slots_and_dims() {
        let left = GridFunction::zeros(IntervalId::OuterLeft, -2.0, -1.0, 3, 2).unwrap();
        let inner = GridFunction::zeros(IntervalId::Inner, 0.0, 1.0, 3, 1).unwrap();
        assert!(TripleFunction::new(Some(left.clone()), Some(inner), None).is_err());
        assert!(TripleFunction::new(None, Some(left.clone()), None).is_err());
        let t = TripleFunction::new(Some(left), None, None).unwrap();
        assert_eq!(t.dim(), Some(2));
        assert!(matches!(t.require(IntervalId::Inner), Err(Error::MissingPart { part: IntervalId::Inner })));
    }

    #[test]
    fn interval_names_round_trip() {
        for id in IntervalId::ALL {
            assert_eq!(IntervalId::parse(id.as_str()), Some(id));
        }
        assert_eq!(IntervalId::parse("middle"), None);
    }
}
