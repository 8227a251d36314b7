//! Dense complex linear algebra for small matrices (`d` up to a few hundred).
//!
//! Hermitian problems go through cyclic Jacobi; unitary eigenproblems are mapped
//! onto Hermitian ones by the Cayley transform, so no general non-Hermitian
//! eigensolver is needed. Matrix exponentials come from two unrelated routes
//! (spectral and Padé scaling-and-squaring) so each can check the other.

mod expm;
mod hermitian;
mod lu;
mod matrix;
mod unitary;

pub use expm::{expm_i_hermitian, expm_scaling_squaring};
pub use hermitian::{herm_eig, herm_eig_with, HermitianEig, HermitianMatrix};
pub use lu::{det, inverse, solve_linear, solve_linear_with, LuFactors};
pub use matrix::{vec_inner, vec_norm, ComplexMatrix};
pub use unitary::{principal_arg, unitary_eig, unitary_eig_with_phase, UnitaryEig, UnitaryMatrix};

use core::cmp::Ordering;

use num_complex::Complex64;

/// Smallest modulus that counts as "nonzero" when fixing eigenvector phases.
const PHASE_FLOOR: f64 = 1e-8;

/// Rotate `v` so that its first non-negligible component is real and positive.
pub(crate) fn normalize_phase(v: &mut [Complex64]) {
    if let Some(pivot) = v.iter().find(|z| z.norm() > PHASE_FLOOR) {
        let rot = pivot.conj() / pivot.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

/// Lexicographic order on complex vectors (real part, then imaginary part).
pub(crate) fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}
