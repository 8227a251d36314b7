//! Independent reference computations.
//!
//! Nothing here touches the eigensolvers or the spectral matrix exponential: the
//! determinant sweep integrates the inner equation with RK4 and takes LU
//! determinants, and the differential expression is applied by finite
//! differences. The main paths are checked against these.

mod compare;
mod fd;
mod rk4;
mod sweep;

pub use compare::{compare_spectra, match_values, MatchReport};
pub use fd::{
    apply_expression, apply_expression_with_order, apply_generator, differentiate, fornberg_weights,
    RESIDUAL_FD_ORDER,
};
pub use rk4::{rk4_fundamental, rk4_fundamental_powered, rk4_step_matrix};
pub use sweep::{det_sweep_eigenvalues, SweepConfig, SweepResult};
