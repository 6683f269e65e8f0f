//! Two-qubit density matrices and their Bloch / correlation-matrix decomposition.

use nalgebra::{DMatrix, Matrix3, Matrix4, SymmetricEigen, Vector3, Vector4};
use num_complex::Complex64;

use super::pauli::{expectation, identity2, kron, sigma};
use crate::error::{Error, Result};

/// Dynamically sized complex matrix used at API boundaries (parsed input, raw matrices).
pub type ComplexMatrix = DMatrix<Complex64>;

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
/// Eigenvalues down to this value are accepted as zero.
pub const PSD_TOLERANCE: f64 = -1e-10;
pub const CORRELATION_TOLERANCE: f64 = 1e-12;

/// A validated two-qubit state, with cached Bloch vectors and correlation matrix.
///
/// The correlation matrix is stored as `t[(m, n)] = Tr(ρ σ_n ⊗ σ_m)`: rows index
/// Bob's Pauli, columns Alice's, so that `⟨(a·σ)⊗(b·σ)⟩ = b · (T a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Matrix4<Complex64>,
    r: Vector3<f64>,
    s: Vector3<f64>,
    t: Matrix3<f64>,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.mat
    }

    /// Alice's Bloch vector, `r_i = Tr(ρ σ_i ⊗ I)`.
    pub fn alice_bloch(&self) -> &Vector3<f64> {
        &self.r
    }

    /// Bob's Bloch vector, `s_i = Tr(ρ I ⊗ σ_i)`.
    pub fn bob_bloch(&self) -> &Vector3<f64> {
        &self.s
    }

    pub fn correlation_matrix(&self) -> &Matrix3<f64> {
        &self.t
    }

    /// Eigenvalues of ρ in ascending order.
    pub fn eigenvalues(&self) -> Vector4<f64> {
        hermitian_eigenvalues(&self.mat)
    }

    /// Rebuilds a state from its Bloch decomposition
    /// `ρ = ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ t_mn σ_n⊗σ_m)`.
    pub fn from_bloch(r: &Vector3<f64>, s: &Vector3<f64>, t: &Matrix3<f64>) -> Result<Self> {
        let id = identity2();
        let mut mat = kron(&id, &id);
        for i in 0..3 {
            mat += kron(&sigma(i), &id) * Complex64::from(r[i]);
            mat += kron(&id, &sigma(i)) * Complex64::from(s[i]);
        }
        for m in 0..3 {
            for n in 0..3 {
                mat += kron(&sigma(n), &sigma(m)) * Complex64::from(t[(m, n)]);
            }
        }
        Self::from_matrix4(mat * Complex64::from(0.25))
    }

    /// Applies rotations `alice_rot` and `bob_rot` to the two local Bloch frames,
    /// i.e. a local unitary `U_A ⊗ U_B`: `r → R_A r`, `s → R_B s`, `T → R_B T R_Aᵀ`.
    pub fn rotated_locally(&self, alice_rot: &Matrix3<f64>, bob_rot: &Matrix3<f64>) -> Result<Self> {
        let r = alice_rot * self.r;
        let s = bob_rot * self.s;
        let t = bob_rot * self.t * alice_rot.transpose();
        Self::from_bloch(&r, &s, &t)
    }

    pub(crate) fn from_matrix4(mat: Matrix4<Complex64>) -> Result<Self> {
        let hermitian_dev = (mat - mat.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max);
        if !(hermitian_dev <= HERMITIAN_TOLERANCE) {
            return Err(Error::NotHermitian {
                deviation: hermitian_dev,
                tolerance: HERMITIAN_TOLERANCE,
            });
        }
        let trace_dev = (mat.trace() - Complex64::from(1.0)).norm();
        if !(trace_dev <= TRACE_TOLERANCE) {
            return Err(Error::NotUnitTrace {
                deviation: trace_dev,
                tolerance: TRACE_TOLERANCE,
            });
        }
        let min_eig = hermitian_eigenvalues(&mat).min();
        if min_eig < PSD_TOLERANCE {
            return Err(Error::NotPositive {
                min_eigenvalue: min_eig,
                tolerance: PSD_TOLERANCE,
            });
        }

        let id = identity2();
        let r = Vector3::from_fn(|i, _| expectation(&mat, &kron(&sigma(i), &id)));
        let s = Vector3::from_fn(|i, _| expectation(&mat, &kron(&id, &sigma(i))));
        let t = Matrix3::from_fn(|m, n| expectation(&mat, &kron(&sigma(n), &sigma(m))));
        let worst = t.amax();
        if worst > 1.0 + CORRELATION_TOLERANCE {
            return Err(Error::CorrelationOutOfRange { magnitude: worst });
        }
        Ok(Self { mat, r, s, t })
    }
}

fn hermitian_eigenvalues(mat: &Matrix4<Complex64>) -> Vector4<f64> {
    // Symmetrize so the solver sees an exactly Hermitian input.
    let h = (mat + mat.adjoint()) * Complex64::from(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Vector4::from_vec(ev)
}

/// Validates a raw 4×4 complex matrix as a two-qubit state.
pub fn make_state(mat: &ComplexMatrix) -> Result<DensityMatrix> {
    if mat.nrows() != 4 || mat.ncols() != 4 {
        return Err(Error::WrongShape {
            expected: 4,
            rows: mat.nrows(),
            cols: mat.ncols(),
        });
    }
    DensityMatrix::from_matrix4(Matrix4::from_fn(|i, j| mat[(i, j)]))
}

fn pure_state(amplitudes: [Complex64; 4]) -> Result<DensityMatrix> {
    let psi = Vector4::from(amplitudes);
    DensityMatrix::from_matrix4(psi * psi.adjoint())
}

/// The singlet `(|01⟩ − |10⟩)/√2`.
pub fn singlet() -> DensityMatrix {
    bell_state(3).expect("singlet is a valid state")
}

/// Bell states indexed 0..4 as Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_state(index: usize) -> Result<DensityMatrix> {
    let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    let z = Complex64::from(0.0);
    let amps = match index {
        0 => [h, z, z, h],
        1 => [h, z, z, -h],
        2 => [z, h, h, z],
        3 => [z, h, -h, z],
        _ => {
            return Err(Error::OutOfRange {
                name: "bell index",
                value: index as f64,
                min: 0.0,
                max: 3.0,
            })
        }
    };
    pure_state(amps)
}

/// `cos θ |00⟩ + sin θ |11⟩`.
pub fn pure_schmidt(angle: f64) -> Result<DensityMatrix> {
    if !angle.is_finite() {
        return Err(Error::InvalidArgument(format!("Schmidt angle {angle} is not finite")));
    }
    let z = Complex64::from(0.0);
    pure_state([Complex64::from(angle.cos()), z, z, Complex64::from(angle.sin())])
}

/// `η |ψ⁻⟩⟨ψ⁻| + (1 − η) I/4`.
pub fn werner_state(eta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            min: 0.0,
            max: 1.0,
        });
    }
    let singlet = singlet();
    let mixed = Matrix4::<Complex64>::identity() * Complex64::from(0.25);
    DensityMatrix::from_matrix4(
        singlet.mat * Complex64::from(eta) + mixed * Complex64::from(1.0 - eta),
    )
}

pub fn maximally_mixed() -> DensityMatrix {
    werner_state(0.0).expect("eta = 0 is in range")
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn diag(entries: [f64; 4]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::from(*e);
        }
        m
    }

    #[test]
    fn product_eigenstate_has_aligned_bloch_vectors() {
        let rho = make_state(&diag([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(*rho.alice_bloch(), Vector3::new(0.0, 0.0, 1.0));
        assert_eq!(*rho.bob_bloch(), Vector3::new(0.0, 0.0, 1.0));
        assert_eq!(
            *rho.correlation_matrix(),
            Matrix3::from_diagonal(&Vector3::new(0.0, 0.0, 1.0))
        );
    }

    #[test]
    fn singlet_correlation_matrix_matches_trace_oracle() {
        let s = FRAC_1_SQRT_2;
        let reference = oracle::from_amplitudes([0.0, s, -s, 0.0]);
        let mut expected = Matrix3::zeros();
        for m in 0..3 {
            for n in 0..3 {
                expected[(m, n)] = oracle::trace_pauli_pair(&reference, n, m);
            }
        }
        // Oracle itself: T = −I for the singlet.
        assert!((expected + Matrix3::identity()).amax() < 1e-15);
        assert!((singlet().correlation_matrix() - expected).amax() < 1e-15);
    }

    #[test]
    fn negative_eigenvalue_is_rejected_with_magnitude() {
        let err = make_state(&diag([0.5, 0.7, -0.1, -0.1])).unwrap_err();
        match &err {
            Error::NotPositive { min_eigenvalue, .. } => {
                assert!((min_eigenvalue + 0.1).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().starts_with("NotPositive"));
    }

    #[test]
    fn non_hermitian_and_bad_trace_are_rejected() {
        let mut m = diag([0.25; 4]);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(make_state(&m), Err(Error::NotHermitian { .. })));

        let m = diag([0.5; 4]);
        match make_state(&m) {
            Err(Error::NotUnitTrace { deviation, .. }) => assert!((deviation - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }

        assert!(matches!(
            make_state(&ComplexMatrix::zeros(2, 2)),
            Err(Error::WrongShape { rows: 2, .. })
        ));
    }

    #[test]
    fn werner_correlation_matrix_scales_with_eta() {
        for eta in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let t = *werner_state(eta).unwrap().correlation_matrix();
            assert!((t + Matrix3::identity() * eta).amax() <= 1e-12, "eta = {eta}");
        }
        assert!(werner_state(-0.1).is_err());
        assert!(werner_state(1.5).is_err());
        assert!(werner_state(f64::NAN).is_err());
    }

    #[test]
    fn werner_marginals_vanish() {
        let w = werner_state(0.6).unwrap();
        assert!(w.alice_bloch().amax() < 1e-15);
        assert!(w.bob_bloch().amax() < 1e-15);
    }

    #[test]
    fn bloch_round_trip_reproduces_matrix() {
        let rho = pure_schmidt(0.3).unwrap();
        let back = DensityMatrix::from_bloch(rho.alice_bloch(), rho.bob_bloch(), rho.correlation_matrix())
            .unwrap();
        assert!((back.matrix() - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-15);
    }

    #[test]
    fn bell_states_are_maximally_correlated() {
        for i in 0..4 {
            let t = *bell_state(i).unwrap().correlation_matrix();
            let tt = t.transpose() * t;
            assert!((tt - Matrix3::identity()).amax() < 1e-15);
        }
        assert!(bell_state(4).is_err());
    }

    #[test]
    fn eigenvalues_of_werner_state() {
        let ev = werner_state(0.5).unwrap().eigenvalues();
        // (1 − η)/4 three times, (1 + 3η)/4 once.
        assert!((ev[0] - 0.125).abs() < 1e-15);
        assert!((ev[3] - 0.625).abs() < 1e-15);
    }
}
