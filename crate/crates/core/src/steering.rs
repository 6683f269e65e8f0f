//! The CHSH-scenario steering inequality, its mutually-unbiased reduction and the
//! state-level maximum with optimal settings.
//!
//! For Bob's projective pair `(B, B′)` with overlap `μ = Tr(Π₁^B Π₁^B′) = (1 + b·b′)/2`
//! and `β = arctan(√(1−μ)/√μ)`, the four correlations admit an LHV-LHS model iff
//!
//! ```text
//! (√u1 + √u2) / sin 2β ≤ 2,
//! u1 = ⟨(A+A′)B⟩² + ⟨(A+A′)B′⟩² − 2 cos 2β ⟨(A+A′)B⟩⟨(A+A′)B′⟩
//! u2 = the same with A − A′.
//! ```
//!
//! Replacing `B′` by `B″ = (B′ − (2μ−1)B) / (2√(μ(1−μ)))` leaves the left side
//! unchanged and sets `β = π/4`.

use nalgebra::{SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{correlation_vector, BlochObservable, CorrelationVector, DensityMatrix};

/// Pairs with `sin 2β` below this are rejected.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;
/// Tolerance on `b · b″` for an orthonormal Bob pair.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;
/// Overlap used to build the non-MUB Bob partner when reporting the general form at the optimum.
pub const REPORT_MU: f64 = 0.75;
/// Local bound of both the steering and the CHSH expression.
pub const LOCAL_BOUND: f64 = 2.0;

/// `β = arctan(√(1−μ)/√μ)` in `[0, π/2]`.
pub fn beta_from_mu(mu: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::OutOfRange {
            name: "mu",
            value: mu,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok((1.0 - mu).sqrt().atan2(mu.sqrt()))
}

fn check_sin_two_beta(beta: f64) -> Result<f64> {
    let s = (2.0 * beta).sin();
    if !(s >= DEGENERACY_TOLERANCE) {
        return Err(Error::DegenerateMeasurementPair { sin_two_beta: s });
    }
    Ok(s)
}

/// Bob's two projective measurements and the overlap they define.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementPair {
    pub b: BlochObservable,
    pub b_prime: BlochObservable,
    pub mu: f64,
    pub beta: f64,
}

impl MeasurementPair {
    pub fn new(b: BlochObservable, b_prime: BlochObservable) -> Result<Self> {
        let mu = ((1.0 + b.dot(&b_prime)) / 2.0).clamp(0.0, 1.0);
        let beta = beta_from_mu(mu)?;
        check_sin_two_beta(beta)?;
        Ok(Self {
            b,
            b_prime,
            mu,
            beta,
        })
    }

    /// Canonical pair with overlap `mu`: `b = ẑ`, `b′` in the z–x plane.
    pub fn from_mu(mu: f64) -> Result<Self> {
        let beta = beta_from_mu(mu)?;
        let s = check_sin_two_beta(beta)?;
        let b_prime = BlochObservable::from_direction(Vector3::new(s, 0.0, 2.0 * mu - 1.0))?;
        Ok(Self {
            b: BlochObservable::z(),
            b_prime,
            mu,
            beta,
        })
    }

    pub fn sin_two_beta(&self) -> f64 {
        (2.0 * self.beta).sin()
    }
}

/// Left side of the general inequality for Bob's overlap angle `beta`.
pub fn steering_lhs_with_beta(cv: &CorrelationVector, beta: f64) -> Result<f64> {
    if cv.basis != crate::quantum::Basis::Measurement {
        return Err(Error::WrongBasis {
            expected: "measurement",
        });
    }
    let s = check_sin_two_beta(beta)?;
    let cos2b = (2.0 * beta).cos();
    let [ab, apb, abp, apbp] = cv.c;
    let quad = |p: f64, q: f64| (p * p + q * q - 2.0 * cos2b * p * q).max(0.0);
    let u1 = quad(ab + apb, abp + apbp);
    let u2 = quad(ab - apb, abp - apbp);
    Ok((u1.sqrt() + u2.sqrt()) / s)
}

/// `(√u1 + √u2) / sin 2β`; LHV-LHS consistent iff the result is at most 2.
pub fn steering_lhs_general(cv: &CorrelationVector, pair: &MeasurementPair) -> Result<f64> {
    steering_lhs_with_beta(cv, pair.beta)
}

/// The measurement mutually unbiased to `B` in the equivalence class of `B′`.
pub fn mub_partner(pair: &MeasurementPair) -> Result<BlochObservable> {
    let s = check_sin_two_beta(pair.beta)?;
    let cos2b = 2.0 * pair.mu - 1.0;
    let axis = (pair.b_prime.axis() - pair.b.axis() * cos2b) / s;
    BlochObservable::from_direction(axis)
}

/// `√(⟨(A+A′)B⟩² + ⟨(A+A′)B″⟩²) + √(⟨(A−A′)B⟩² + ⟨(A−A′)B″⟩²)` for a
/// correlation vector measured with `B″` in the `B′` slot.
pub fn steering_lhs_mub(cv_mub: &CorrelationVector) -> f64 {
    let [ab, apb, abpp, apbpp] = cv_mub.measurement_components();
    (ab + apb).hypot(abpp + apbpp) + (ab - apb).hypot(abpp - apbpp)
}

/// The mutually-unbiased left side written through the correlation matrix:
/// `√((b, T(a+a′))² + (b″, T(a+a′))²) + √((b, T(a−a′))² + (b″, T(a−a′))²)`.
pub fn e_steer(
    rho: &DensityMatrix,
    a: &BlochObservable,
    a_prime: &BlochObservable,
    b: &BlochObservable,
    b_mub: &BlochObservable,
) -> Result<f64> {
    let dot = b.dot(b_mub);
    if dot.abs() > ORTHOGONALITY_TOLERANCE {
        return Err(Error::BobPairNotOrthogonal { dot });
    }
    let t = rho.correlation_matrix();
    let plus = t * (a.axis() + a_prime.axis());
    let minus = t * (a.axis() - a_prime.axis());
    let (bv, bm) = (b.axis(), b_mub.axis());
    Ok(bv.dot(&plus).hypot(bm.dot(&plus)) + bv.dot(&minus).hypot(bm.dot(&minus)))
}

/// `â + â′ = 2 cos θ ĉ`, `â − â′ = 2 sin θ ĉ′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AliceDecomposition {
    pub theta: f64,
    pub c: Vector3<f64>,
    pub c_prime: Vector3<f64>,
}

pub fn decompose_alice(a: &BlochObservable, a_prime: &BlochObservable) -> Result<AliceDecomposition> {
    let sum = a.axis() + a_prime.axis();
    let diff = a.axis() - a_prime.axis();
    let (ns, nd) = (sum.norm(), diff.norm());
    if ns < DEGENERACY_TOLERANCE || nd < DEGENERACY_TOLERANCE {
        return Err(Error::DegenerateAlicePair {
            sum_norm: ns,
            diff_norm: nd,
        });
    }
    Ok(AliceDecomposition {
        theta: nd.atan2(ns),
        c: sum / ns,
        c_prime: diff / nd,
    })
}

/// `2 (cos θ ‖T ĉ‖ + sin θ ‖T ĉ′‖)`: the value of [`e_steer`] once Bob's pair
/// spans the plane containing `T(â ± â′)`.
pub fn e_steer_bob_free(rho: &DensityMatrix, decomposition: &AliceDecomposition) -> f64 {
    let t = rho.correlation_matrix();
    let (s, c) = decomposition.theta.sin_cos();
    2.0 * (c * (t * decomposition.c).norm() + s * (t * decomposition.c_prime).norm())
}

/// Orthonormal Bob pair spanning `span(T(â+â′), T(â−â′))`, completed arbitrarily
/// when that span has dimension below two.
pub fn optimal_bob_pair(
    rho: &DensityMatrix,
    a: &BlochObservable,
    a_prime: &BlochObservable,
) -> (BlochObservable, BlochObservable) {
    let t = rho.correlation_matrix();
    let plus = t * (a.axis() + a_prime.axis());
    let minus = t * (a.axis() - a_prime.axis());
    let (first, second) = if plus.norm() >= minus.norm() {
        (plus, minus)
    } else {
        (minus, plus)
    };
    let b = if first.norm() > 1e-12 {
        first.normalize()
    } else {
        Vector3::z()
    };
    let rest = second - b * b.dot(&second);
    let b_mub = if rest.norm() > 1e-12 {
        rest.normalize()
    } else {
        perpendicular(&b)
    };
    (
        BlochObservable::from_direction(b).expect("unit"),
        BlochObservable::from_direction(b_mub).expect("unit"),
    )
}

fn perpendicular(v: &Vector3<f64>) -> Vector3<f64> {
    let helper = if v.x.abs() <= v.y.abs() && v.x.abs() <= v.z.abs() {
        Vector3::x()
    } else if v.y.abs() <= v.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    v.cross(&helper).normalize()
}

/// State-level maximum of the steering expression together with optimal settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    /// General form evaluated at the optimum with Bob's pair at overlap [`REPORT_MU`].
    pub lhs_general: f64,
    /// Mutually-unbiased form at the optimum.
    pub lhs_mub: f64,
    pub max_value: f64,
    pub theta_max: f64,
    pub c_max: [f64; 3],
    pub c_prime_max: [f64; 3],
    pub a_max: BlochObservable,
    pub a_prime_max: BlochObservable,
    pub b_max: BlochObservable,
    pub b_mub_max: BlochObservable,
    /// Eigenvalues of `TᵀT`, descending.
    pub eigenvalues: [f64; 3],
    /// Set when the second eigenvalue vanishes and `a_max = a′_max = c_max`.
    pub degenerate: bool,
    pub steerable: bool,
}

/// Eigenvalues below this (on the unit scale of `TᵀT`) count as zero for the
/// degeneracy flag.
const ZERO_EIGENVALUE: f64 = 1e-14;

/// Maximizes the steering expression over all settings:
/// `max = 2√(λ1 + λ2)` with `λ1 ≥ λ2` the top eigenvalues of `TᵀT`.
pub fn max_steering(rho: &DensityMatrix) -> SteeringReport {
    let t = rho.correlation_matrix();
    let eig = SymmetricEigen::new(t.transpose() * t);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues = order.map(|i| eig.eigenvalues[i].max(0.0));
    let (l1, l2) = (eigenvalues[0], eigenvalues[1]);

    let c = eig.eigenvectors.column(order[0]).normalize();
    let c_prime = {
        let raw = eig.eigenvectors.column(order[1]).into_owned();
        (raw - c * c.dot(&raw)).normalize()
    };

    let degenerate = l2 <= ZERO_EIGENVALUE;
    let theta = if degenerate {
        0.0
    } else {
        (t * c_prime).norm().atan2((t * c).norm())
    };
    let (s, co) = theta.sin_cos();
    let a = BlochObservable::from_direction(c * co + c_prime * s).expect("unit combination");
    let a_prime = BlochObservable::from_direction(c * co - c_prime * s).expect("unit combination");

    let (b, b_mub) = optimal_bob_pair(rho, &a, &a_prime);
    let lhs_mub = e_steer(rho, &a, &a_prime, &b, &b_mub).expect("orthonormal by construction");

    let sin2b = 2.0 * (REPORT_MU * (1.0 - REPORT_MU)).sqrt();
    let b_prime = BlochObservable::from_direction(
        b.axis() * (2.0 * REPORT_MU - 1.0) + b_mub.axis() * sin2b,
    )
    .expect("unit combination");
    let pair = MeasurementPair::new(b, b_prime).expect("non-degenerate report pair");
    let cv = correlation_vector(rho, &a, &a_prime, &b, &b_prime);
    let lhs_general = steering_lhs_general(&cv, &pair).expect("measurement-basis vector");

    let max_value = 2.0 * (l1 + l2).sqrt();
    SteeringReport {
        lhs_general,
        lhs_mub,
        max_value,
        theta_max: theta,
        c_max: c.into(),
        c_prime_max: c_prime.into(),
        a_max: a,
        a_prime_max: a_prime,
        b_max: b,
        b_mub_max: b_mub,
        eigenvalues,
        degenerate,
        steerable: max_value > LOCAL_BOUND,
    }
}
