//! Pauli matrices and the handful of operator products built from them.

use nalgebra::{Matrix2, Matrix4, Vector3};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity2() -> Matrix2<Complex64> {
    Matrix2::identity()
}

/// σ_x, σ_y, σ_z for `index` 0, 1, 2.
pub fn sigma(index: usize) -> Matrix2<Complex64> {
    match index {
        0 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        1 => Matrix2::new(ZERO, -I, I, ZERO),
        2 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {index} out of range 0..3"),
    }
}

/// `axis · σ` for a real 3-vector.
pub fn axis_operator(axis: &Vector3<f64>) -> Matrix2<Complex64> {
    (0..3).fold(Matrix2::zeros(), |acc, i| {
        acc + sigma(i) * Complex64::new(axis[i], 0.0)
    })
}

/// Tensor product with Alice's factor first.
pub fn kron(alice: &Matrix2<Complex64>, bob: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = alice[(i, j)] * bob[(k, l)];
                }
            }
        }
    }
    out
}

/// Re Tr(ρ · op) for Hermitian `op`.
pub fn expectation(rho: &Matrix4<Complex64>, op: &Matrix4<Complex64>) -> f64 {
    (rho * op).trace().re
}
