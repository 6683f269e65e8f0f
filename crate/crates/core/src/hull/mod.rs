//! Convex hulls of planar conic sets and the LHV-LHS correlation set.
//!
//! Two convex sets bounded by centred quadratic forms, `C1 = {f ≤ r1}` in one
//! coordinate plane and `C2 = {g ≤ r2}` in the complementary plane, have convex
//! hull `{ v : √(f(v)/r1) + √(g(v)/r2) ≤ 1 }`. With `r1 = r2 = r` this is
//! `√f + √g ≤ √r`, which for `f = g = x² + y² − 2xy cos 2β` and `r = sin² 2β` is
//! the steering inequality in e-basis coordinates.
//!
//! [`lp_membership`] checks the same set by brute force: the correlation vector
//! must be a convex combination of sampled extreme points of the LHV-LHS model.

pub mod lp;

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::quantum::CorrelationVector;
use crate::steering::DEGENERACY_TOLERANCE;
use lp::{convex_combination, LpOutcome};

/// Default number of ξ samples per ellipse for the LP oracle.
pub const DEFAULT_DISCRETIZATION: usize = 720;
/// Smallest accepted ξ discretization.
pub const MIN_DISCRETIZATION: usize = 16;
/// Closed-form and LP verdicts may disagree within this distance of the boundary.
pub const BOUNDARY_BAND: f64 = 1e-3;

/// `{ (x, y) : a x² + b y² + c x y ≤ r }` placed on two of the four coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarConicSet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r: f64,
    pub plane: (usize, usize),
}

impl PlanarConicSet {
    pub fn new(a: f64, b: f64, c: f64, r: f64, plane: (usize, usize)) -> Result<Self> {
        if !(a > 0.0 && 4.0 * a * b - c * c > 0.0) {
            return Err(Error::InvalidConic(format!(
                "quadratic form a={a}, b={b}, c={c} is not positive definite"
            )));
        }
        if !(r > 0.0) {
            return Err(Error::InvalidConic(format!("bound r = {r} must be positive")));
        }
        if plane.0 == plane.1 || plane.0 > 3 || plane.1 > 3 {
            return Err(Error::InvalidConic(format!(
                "plane {plane:?} must name two distinct axes in 0..4"
            )));
        }
        Ok(Self { a, b, c, r, plane })
    }

    /// The projective-measurement ellipse `x² + y² − 2xy cos 2β ≤ sin² 2β`.
    pub fn steering_ellipse(beta: f64, plane: (usize, usize)) -> Result<Self> {
        let s = (2.0 * beta).sin();
        if !(s >= DEGENERACY_TOLERANCE) {
            return Err(Error::DegenerateMeasurementPair { sin_two_beta: s });
        }
        Self::new(1.0, 1.0, -2.0 * (2.0 * beta).cos(), s * s, plane)
    }

    pub fn form(&self, x: f64, y: f64) -> f64 {
        (self.a * x * x + self.b * y * y + self.c * x * y).max(0.0)
    }

    fn form_at(&self, v: &[f64; 4]) -> f64 {
        self.form(v[self.plane.0], v[self.plane.1])
    }

    /// `n` points on the boundary `f = r`, embedded as 4-vectors.
    pub fn boundary_points(&self, n: usize) -> Vec<[f64; 4]> {
        (0..n)
            .map(|j| {
                let ang = TAU * j as f64 / n as f64;
                let (s, c) = ang.sin_cos();
                let radius = (self.r / self.form(c, s)).sqrt();
                let mut p = [0.0; 4];
                p[self.plane.0] = radius * c;
                p[self.plane.1] = radius * s;
                p
            })
            .collect()
    }
}

/// Outcome of a membership test.
///
/// `inside ⇔ value ≤ bound`. Closed-form tests fill `value`/`bound` with the
/// two sides of the hull inequality; LP tests use the phase-one infeasibility
/// (clamped to 0 when feasible) against a bound of 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullMembership {
    pub value: f64,
    pub bound: f64,
    pub inside: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lp_inside: Option<bool>,
    /// `(extreme-point index, weight)` pairs certifying LP membership.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights: Option<Vec<(usize, f64)>>,
}

impl HullMembership {
    fn closed_form(value: f64, bound: f64) -> Self {
        Self {
            value,
            bound,
            inside: value <= bound,
            lp_inside: None,
            weights: None,
        }
    }

    pub(crate) fn from_lp(outcome: LpOutcome) -> Self {
        let value = if outcome.feasible {
            0.0
        } else {
            outcome.infeasibility
        };
        Self {
            value,
            bound: 0.0,
            inside: outcome.feasible,
            lp_inside: Some(outcome.feasible),
            weights: outcome.feasible.then_some(outcome.weights),
        }
    }

    /// Attaches an LP verdict to a closed-form result.
    pub fn with_lp(mut self, lp: &HullMembership) -> Self {
        self.lp_inside = lp.lp_inside;
        self.weights = lp.weights.clone();
        self
    }

    /// Distance of the closed-form value from its bound.
    pub fn margin(&self) -> f64 {
        (self.value - self.bound).abs()
    }

    /// `false` only when an LP verdict is present, disagrees, and lies outside the band.
    pub fn consistent(&self, band: f64) -> bool {
        match self.lp_inside {
            Some(lp) => lp == self.inside || self.margin() < band,
            None => true,
        }
    }
}

fn check_planes(s1: &PlanarConicSet, s2: &PlanarConicSet) -> Result<()> {
    let (p, q) = (s1.plane, s2.plane);
    if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
        return Err(Error::OverlappingPlanes {
            first: p,
            second: q,
        });
    }
    Ok(())
}

/// Closed-form membership of `v` in the convex hull of `s1 ∪ s2`.
///
/// With equal bounds the value is `√f + √g` against `√r`; otherwise each
/// radical is normalized by its own bound and the sum rescaled by `max √r`.
pub fn hull_inequality(s1: &PlanarConicSet, s2: &PlanarConicSet, v: &[f64; 4]) -> Result<HullMembership> {
    check_planes(s1, s2)?;
    let (f, g) = (s1.form_at(v), s2.form_at(v));
    let bound = s1.r.max(s2.r).sqrt();
    let value = if s1.r == s2.r {
        f.sqrt() + g.sqrt()
    } else {
        bound * ((f / s1.r).sqrt() + (g / s2.r).sqrt())
    };
    Ok(HullMembership::closed_form(value, bound))
}

/// LP membership in the hull of `n` boundary samples of each set.
pub fn lp_hull_membership(
    s1: &PlanarConicSet,
    s2: &PlanarConicSet,
    v: &[f64; 4],
    n: usize,
) -> Result<HullMembership> {
    check_planes(s1, s2)?;
    if n < MIN_DISCRETIZATION {
        return Err(Error::DiscretizationTooCoarse {
            given: n,
            min: MIN_DISCRETIZATION,
        });
    }
    let points: Vec<Vec<f64>> = s1
        .boundary_points(n)
        .into_iter()
        .chain(s2.boundary_points(n))
        .map(|p| p.to_vec())
        .collect();
    Ok(HullMembership::from_lp(convex_combination(&points, v)))
}

/// The steering inequality as a hull test: e-basis `v` against two copies of
/// the projective ellipse. `value / sin 2β` equals half the general left side.
pub fn steering_hull_membership(cv: &CorrelationVector, beta: f64) -> Result<HullMembership> {
    let s1 = PlanarConicSet::steering_ellipse(beta, (0, 1))?;
    let s2 = PlanarConicSet::steering_ellipse(beta, (2, 3))?;
    hull_inequality(&s1, &s2, &cv.e_components())
}

/// LHV-LHS extreme points in the measurement basis for `ξ_j = 2πj/k`:
/// indices `0..k` are `χ = 1`, `(p, p, q, q)`, and `k..2k` are `χ = 2`,
/// `(p, −p, q, −q)`, with `p = cos(ξ+β)`, `q = cos(ξ−β)`.
pub fn extreme_points(beta: f64, k: usize) -> Vec<[f64; 4]> {
    let column = |j: usize| {
        let xi = TAU * j as f64 / k as f64;
        ((xi + beta).cos(), (xi - beta).cos())
    };
    let chi1 = (0..k).map(|j| {
        let (p, q) = column(j);
        [p, p, q, q]
    });
    let chi2 = (0..k).map(|j| {
        let (p, q) = column(j);
        [p, -p, q, -q]
    });
    chi1.chain(chi2).collect()
}

/// Brute-force LHV-LHS membership: is `cv` a convex combination of the
/// `2k` sampled extreme points?
pub fn lp_membership(cv: &CorrelationVector, beta: f64, k: usize) -> Result<HullMembership> {
    if k < MIN_DISCRETIZATION {
        return Err(Error::DiscretizationTooCoarse {
            given: k,
            min: MIN_DISCRETIZATION,
        });
    }
    let s = (2.0 * beta).sin();
    if !(s >= DEGENERACY_TOLERANCE) {
        return Err(Error::DegenerateMeasurementPair { sin_two_beta: s });
    }
    let points: Vec<Vec<f64>> = extreme_points(beta, k).iter().map(|p| p.to_vec()).collect();
    Ok(HullMembership::from_lp(convex_combination(&points, &cv.measurement_components())))
}

/// Closed-form verdict with the LP verdict attached.
pub fn check_membership(cv: &CorrelationVector, beta: f64, k: usize) -> Result<HullMembership> {
    let closed = steering_hull_membership(cv, beta)?;
    let lp = lp_membership(cv, beta, k)?;
    Ok(closed.with_lp(&lp))
}
