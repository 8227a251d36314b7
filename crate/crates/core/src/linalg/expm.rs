use num_complex::Complex64;

use super::hermitian::{herm_eig, HermitianMatrix};
use super::lu::LuFactors;
use super::matrix::ComplexMatrix;
use super::unitary::UnitaryMatrix;
use crate::error::{Error, Result};

/// `e^{iAt} = V diag(e^{i lambda_j t}) V^*` from the Hermitian eigendecomposition.
pub fn expm_i_hermitian(a: &HermitianMatrix, t: f64) -> Result<UnitaryMatrix> {
    let eig = herm_eig(a)?;
    let m = eig.map_spectrum(|x| Complex64::from_polar(1.0, x * t));
    Ok(UnitaryMatrix::from_matrix_unchecked(m))
}

// Degree-13 Padé coefficients and the matching 1-norm threshold (Higham, 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// General matrix exponential by scaling and squaring with a `[13/13]` Padé approximant.
pub fn expm_scaling_squaring(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let norm = m.norm1();
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = m.scale(Complex64::new(0.5f64.powi(squarings), 0.0));

    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| Complex64::new(PADE13[k], 0.0);

    let inner_u = &(&a6.scale(b(13)) + &a4.scale(b(11))) + &a2.scale(b(9));
    let tail_u = &(&(&a6.scale(b(7)) + &a4.scale(b(5))) + &a2.scale(b(3))) + &id.scale(b(1));
    let u = &a * &(&(&a6 * &inner_u) + &tail_u);

    let inner_v = &(&a6.scale(b(12)) + &a4.scale(b(10))) + &a2.scale(b(8));
    let tail_v = &(&(&a6.scale(b(6)) + &a4.scale(b(4))) + &a2.scale(b(2))) + &id.scale(b(0));
    let v = &(&a6 * &inner_v) + &tail_v;

    let lu = LuFactors::new(&(&v - &u))?;
    lu.check_pivots(1e-14, lu.scale())?;
    let mut r = lu.solve_matrix(&(&v + &u));
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}
