//! Selfadjoint extensions, spectra and resolvents of the first-order multipoint
//! operator `l = (l1, l2, l3)`, `lk = i d/dt + Ak`, acting on vector functions over
//! `(-inf, a1) ∪ (a2, b2) ∪ (a3, +inf)` with values in `C^d`.
//!
//! Every selfadjoint extension is fixed by two unitary coupling matrices:
//! `u3(a3) = W1 u1(a1)` joins the two half-lines and `u2(b2) = W2 u2(a2)` closes the
//! finite interval. The crate provides
//!
//! * [`linalg`]: dense complex linear algebra (Jacobi, Cayley, Padé, LU),
//! * [`model`]: problem definitions, grids, sampled functions and `L²` products,
//! * [`boundary_triplet`]: boundary-value maps and the Green identity,
//! * [`spectrum`]: the point spectrum of the finite-interval part via its monodromy
//!   matrix, plus the witnesses for the outer part,
//! * [`resolvent`]: explicit resolvent kernels and the resolvent-norm probe,
//! * [`oracle`]: independent RK4/determinant and finite-difference checks,
//! * [`example`]: the Neumann-mode reduction of a Schrödinger-type model PDE.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boundary_triplet;
pub mod error;
pub mod example;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod resolvent;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
