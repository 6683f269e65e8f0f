//! Horodecki CHSH maximum and the steering / Bell-nonlocality equivalence check.
//!
//! [`max_chsh`] deliberately does not reuse anything from [`crate::steering`]:
//! it reads the correlation matrix and computes the smallest eigenvalue of
//! `TᵀT` in closed form, whereas [`max_steering`] runs an iterative
//! eigendecomposition. The certificate compares the two.

use nalgebra::{Matrix3, Vector3};
use std::f64::consts::FRAC_PI_3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{random_state, werner_state, DensityMatrix};
use crate::steering::{max_steering, LOCAL_BOUND};

/// Gap allowed between the two maxima for a certificate to pass.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-8;

/// Eigenvalues of a symmetric 3×3 matrix, descending.
///
/// The root farthest from the mean comes from the trigonometric solution of
/// the characteristic cubic, where it is well conditioned. The other two come
/// from the 2×2 block on the orthogonal complement of its eigenvector, which
/// keeps near-degenerate pairs accurate.
fn symmetric_eigenvalues_closed_form(m: &Matrix3<f64>) -> [f64; 3] {
    let off = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
    let q = m.trace() / 3.0;
    let spread = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * off;
    if spread <= f64::MIN_POSITIVE {
        return [q; 3];
    }
    let p = (spread / 6.0).sqrt();
    let shifted = (m - Matrix3::identity() * q) / p;
    let half_det = (shifted.determinant() / 2.0).clamp(-1.0, 1.0);
    let phi = half_det.acos() / 3.0;
    let isolated = [0.0, 1.0, 2.0]
        .map(|j| q + 2.0 * p * (phi + j * 2.0 * FRAC_PI_3).cos())
        .into_iter()
        .max_by(|a, b| (a - q).abs().total_cmp(&(b - q).abs()))
        .expect("three roots");

    let v = null_vector(&(m - Matrix3::identity() * isolated));
    let helper = if v.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let u = v.cross(&helper).normalize();
    let w = v.cross(&u);
    let (a, b, d) = (u.dot(&(m * u)), u.dot(&(m * w)), w.dot(&(m * w)));
    let mid = 0.5 * (a + d);
    let rad = (0.5 * (a - d)).hypot(b);

    let mut out = [isolated, mid + rad, mid - rad];
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Unit vector spanning the kernel of a rank-two symmetric matrix.
fn null_vector(s: &Matrix3<f64>) -> Vector3<f64> {
    let rows = [s.row(0).transpose(), s.row(1).transpose(), s.row(2).transpose()];
    [(0, 1), (0, 2), (1, 2)]
        .map(|(i, j)| rows[i].cross(&rows[j]))
        .into_iter()
        .max_by(|a, b| a.norm_squared().total_cmp(&b.norm_squared()))
        .expect("three candidates")
        .normalize()
}

/// Maximum CHSH value over all settings: `2√(λ1 + λ2)` for the two largest
/// eigenvalues of `TᵀT`. The CHSH inequality is violated iff this exceeds 2.
pub fn max_chsh(rho: &DensityMatrix) -> f64 {
    let t = rho.correlation_matrix();
    let [l1, l2, _] = symmetric_eigenvalues_closed_form(&(t.transpose() * t));
    2.0 * (l1.max(0.0) + l2.max(0.0)).sqrt()
}

pub fn violates_chsh(rho: &DensityMatrix) -> bool {
    max_chsh(rho) > LOCAL_BOUND
}

/// One state's comparison inside an ensemble run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceRow {
    pub index: u64,
    pub max_steering: f64,
    pub max_chsh: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceCertificate {
    pub schema_version: u32,
    pub seed: u64,
    pub n_states: u64,
    pub max_abs_gap: f64,
    /// Largest steering maximum seen over the ensemble.
    pub max_steering_seen: f64,
    pub pass: bool,
}

impl EquivalenceCertificate {
    pub fn from_rows(seed: u64, rows: &[EquivalenceRow]) -> Self {
        let max_abs_gap = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
        let max_steering_seen = rows.iter().map(|r| r.max_steering).fold(0.0, f64::max);
        Self {
            schema_version: crate::SCHEMA_VERSION,
            seed,
            n_states: rows.len() as u64,
            max_abs_gap,
            max_steering_seen,
            pass: max_abs_gap <= CERTIFICATE_TOLERANCE,
        }
    }
}

/// Per-state comparison over `n_states` random states; state `i` uses seed `seed + i`,
/// so the rows do not depend on thread scheduling.
pub fn equivalence_rows(seed: u64, n_states: u64) -> Result<Vec<EquivalenceRow>> {
    if n_states == 0 {
        return Err(Error::InvalidArgument("n_states must be at least 1".into()));
    }
    Ok((0..n_states)
        .into_par_iter()
        .map(|index| {
            let rho = random_state(seed.wrapping_add(index));
            let steer = max_steering(&rho).max_value;
            let chsh = max_chsh(&rho);
            EquivalenceRow {
                index,
                max_steering: steer,
                max_chsh: chsh,
                gap: (steer - chsh).abs(),
            }
        })
        .collect())
}

pub fn certify_equivalence(seed: u64, n_states: u64) -> Result<EquivalenceCertificate> {
    Ok(EquivalenceCertificate::from_rows(seed, &equivalence_rows(seed, n_states)?))
}

/// Bisects `f(η) − 2` on `[0, 1]` for Werner states, where `f` is a state-level maximum.
pub fn werner_threshold<F>(maximum: F, tolerance: f64) -> f64
where
    F: Fn(&DensityMatrix) -> f64,
{
    let excess = |eta: f64| maximum(&werner_state(eta).expect("eta in [0, 1]")) - LOCAL_BOUND;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    debug_assert!(excess(lo) < 0.0 && excess(hi) > 0.0);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::random::{random_rotation, seeded_rng};
    use crate::quantum::{maximally_mixed, singlet};
    use nalgebra::SymmetricEigen;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    #[test]
    fn closed_form_eigenvalues_match_iterative_solver() {
        let mut rng = seeded_rng(1);
        let spectra = [[0.9, 0.3, 0.3], [0.3, 0.9, 0.9], [0.7, 0.0, 0.0], [1.0, 0.5, 0.2], [0.4, 0.4 + 1e-9, 0.1]];
        for i in 0..1000 {
            let r = random_rotation(&mut rng);
            let d = Matrix3::from_diagonal(&Vector3::from(spectra[i % spectra.len()]));
            let m = r * d * r.transpose();
            let mut expect: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
            expect.sort_by(|a, b| b.total_cmp(a));
            let got = symmetric_eigenvalues_closed_form(&m);
            for i in 0..3 {
                assert!((got[i] - expect[i]).abs() < 1e-12, "{got:?} vs {expect:?}");
            }
        }
        assert_eq!(symmetric_eigenvalues_closed_form(&Matrix3::identity()), [1.0; 3]);
    }

    #[test]
    fn max_chsh_examples() {
        assert!((max_chsh(&singlet()) - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((max_chsh(&werner_state(FRAC_1_SQRT_2).unwrap()) - 2.0).abs() < 1e-12);
        assert_eq!(max_chsh(&maximally_mixed()), 0.0);
        assert!(violates_chsh(&singlet()));
        assert!(!violates_chsh(&werner_state(0.6).unwrap()));
    }

    #[test]
    fn single_state_certificate() {
        let rows = equivalence_rows(1, 1).unwrap();
        let rho = random_state(1);
        let gap = (max_steering(&rho).max_value - max_chsh(&rho)).abs();
        assert_eq!(rows[0].gap, gap);
        assert!(gap <= 1e-8);
        let cert = certify_equivalence(1, 1).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.n_states, 1);
    }

    #[test]
    fn empty_ensemble_is_rejected() {
        assert!(matches!(certify_equivalence(1, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rows_are_deterministic_and_ordered() {
        let a = equivalence_rows(9, 64).unwrap();
        let b = equivalence_rows(9, 64).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().enumerate().all(|(i, r)| r.index == i as u64));
    }

    #[test]
    fn steering_and_chsh_maxima_agree() {
        for seed in 0..2000 {
            let rho = random_state(seed);
            assert!((max_chsh(&rho) - max_steering(&rho).max_value).abs() <= 1e-10);
        }
    }

    #[test]
    fn max_chsh_is_local_unitary_invariant() {
        let mut rng = seeded_rng(23);
        for seed in 0..100 {
            let rho = random_state(1000 + seed);
            let (ra, rb) = (random_rotation(&mut rng), random_rotation(&mut rng));
            let turned = rho.rotated_locally(&ra, &rb).unwrap();
            assert!((max_chsh(&rho) - max_chsh(&turned)).abs() < 1e-9);
            // The rotated state is still a state.
            assert!(turned.eigenvalues().min() > -1e-10);
        }
    }

    #[test]
    fn werner_threshold_is_one_over_root_two() {
        let steer = werner_threshold(|rho| max_steering(rho).max_value, 1e-9);
        let chsh = werner_threshold(max_chsh, 1e-9);
        assert!((steer - FRAC_1_SQRT_2).abs() < 1e-6);
        assert!((chsh - FRAC_1_SQRT_2).abs() < 1e-6);
    }
}
