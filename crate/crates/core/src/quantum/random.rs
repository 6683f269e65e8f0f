//! Seeded sampling: Ginibre-style random states, unit axes, rotations and Bob pairs.
//!
//! Every function takes its own generator or seed; there is no shared state.

use nalgebra::{Matrix3, Matrix4, Quaternion, UnitQuaternion, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::observable::BlochObservable;
use super::state::DensityMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G G† / Tr(G G†)` with `G` a 4×4 matrix of standard complex Gaussians.
pub fn random_state(seed: u64) -> DensityMatrix {
    random_state_with(&mut seeded_rng(seed))
}

pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = Matrix4::<Complex64>::from_fn(|_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let gram = g * g.adjoint();
    let trace = gram.trace().re;
    DensityMatrix::from_matrix4(gram / Complex64::from(trace))
        .expect("normalized Gram matrix is a valid state")
}

/// Uniform direction on the unit sphere.
pub fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> BlochObservable {
    loop {
        let v = Vector3::<f64>::from_fn(|_, _| rng.sample(StandardNormal));
        if v.norm() > 1e-6 {
            return BlochObservable::from_direction(v).expect("non-zero direction");
        }
    }
}

/// Uniform rotation from a normalized Gaussian quaternion.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let q = Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    );
    *UnitQuaternion::from_quaternion(q).to_rotation_matrix().matrix()
}

/// Uniformly random orthonormal pair `(b, b″)` in R³.
pub fn random_orthonormal_pair<R: Rng + ?Sized>(
    rng: &mut R,
) -> (BlochObservable, BlochObservable) {
    let rot = random_rotation(rng);
    let b = BlochObservable::from_direction(rot.column(0).into_owned()).expect("rotation column");
    let b2 = BlochObservable::from_direction(rot.column(1).into_owned()).expect("rotation column");
    (b, b2)
}

/// Random orthonormal pair spanning the same plane as `(u, w)`, rotated by a
/// uniform angle and optionally reflected.
pub fn random_pair_in_plane<R: Rng + ?Sized>(
    rng: &mut R,
    u: &BlochObservable,
    w: &BlochObservable,
) -> (BlochObservable, BlochObservable) {
    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let flip = if rng.random::<bool>() { -1.0 } else { 1.0 };
    let (s, c) = angle.sin_cos();
    let b = u.axis() * c + w.axis() * s;
    let b2 = (w.axis() * c - u.axis() * s) * flip;
    (
        BlochObservable::from_direction(b).expect("in-plane combination"),
        BlochObservable::from_direction(b2).expect("in-plane combination"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_state_is_deterministic_per_seed() {
        assert_eq!(random_state(7).matrix(), random_state(7).matrix());
        assert_ne!(random_state(7).matrix(), random_state(8).matrix());
    }

    #[test]
    fn random_states_are_valid() {
        for seed in 0..200 {
            let rho = random_state(seed);
            assert!(rho.eigenvalues().min() >= 0.0 - 1e-14);
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rotations_are_orthogonal() {
        let mut rng = seeded_rng(3);
        for _ in 0..50 {
            let r = random_rotation(&mut rng);
            assert!((r.transpose() * r - Matrix3::identity()).amax() < 1e-14);
            assert!((r.determinant() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn pairs_are_orthonormal() {
        let mut rng = seeded_rng(11);
        let (u, w) = random_orthonormal_pair(&mut rng);
        assert!(u.dot(&w).abs() < 1e-14);
        for _ in 0..20 {
            let (b, b2) = random_pair_in_plane(&mut rng, &u, &w);
            assert!(b.dot(&b2).abs() < 1e-14);
            // Stays in span(u, w).
            let normal = u.axis().cross(w.axis());
            assert!(b.axis().dot(&normal).abs() < 1e-14);
            assert!(b2.axis().dot(&normal).abs() < 1e-14);
        }
    }
}
