//! Problem definitions, grid geometry, sampled functions and `L²` inner products.

mod grid;
mod problem;
mod quadrature;

pub use grid::{GridFunction, IntervalId, TripleFunction};
pub use problem::{make_grid, IntervalConfig, ProblemDefinition, ToleranceConfig};
pub use quadrature::{grid_inner_product, l2_inner_product, l2_norm, simpson_weights};
