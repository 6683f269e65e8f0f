//! Ellipse traced by the outcome probabilities of two dichotomic POVMs.
//!
//! Bob's effects are `E = k |1⟩⟨1| + λ₂ I` and `E′ = k′ |1′⟩⟨1′| + λ₂′ I` with
//! `|⟨1|1′⟩|² = μ`. Over all pure states, `(x, y) = (p(1|B), p(1|B′))` fills an
//! ellipse whose boundary is the conic
//!
//! ```text
//! A x² + 2B xy + C y² + 2D x + 2F y + G = 0
//! ```
//!
//! with `β = k′/k`, `r = βμ`, `s = β(1−μ)`, `t = 2β√(μ(1−μ))`, `α = λ₂′`,
//! `γ = λ₂`, `δ = k + λ₂` and
//! `A = β²`, `B = s − r`, `C = 1`, `F = rγ − sδ − α`,
//! `D = BF − t²(δ+γ)/2`, `G = F² + t²γδ`.
//!
//! Semi-axes are in probability coordinates `(x, y)`; the correlation-space
//! ellipse `(2x−1, 2y−1)` is twice as large (see
//! [`EllipseGeometry::correlation_semi_axes`]).

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::hull::lp::convex_combination;
use crate::hull::HullMembership;

/// Smallest ξ grid for [`boundary_sets`].
pub const MIN_BOUNDARY_SAMPLES: usize = 16;
/// Smallest ξ grid for [`povm_hull_membership`].
pub const MIN_HULL_SAMPLES: usize = 64;

/// Outcome-1 effect of a dichotomic POVM: eigenvalue gap `k` and floor `lam2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmElement {
    pub k: f64,
    pub lam2: f64,
}

impl PovmElement {
    pub fn new(k: f64, lam2: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::TrivialEffect { k });
        }
        if !(lam2 >= 0.0 && lam2 + k <= 1.0) {
            return Err(Error::InvalidEffect {
                lam2,
                lam1: lam2 + k,
            });
        }
        Ok(Self { k, lam2 })
    }

    /// A rank-one projector.
    pub fn projective() -> Self {
        Self { k: 1.0, lam2: 0.0 }
    }

    pub fn lam1(&self) -> f64 {
        self.lam2 + self.k
    }
}

/// `A x² + 2B xy + C y² + 2D x + 2F y + G`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
    pub g: f64,
}

impl ConicCoefficients {
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.a * x * x
            + 2.0 * self.b * x * y
            + self.c * y * y
            + 2.0 * self.d * x
            + 2.0 * self.f * y
            + self.g
    }

    /// Half the gradient: `(Ax + By + D, Bx + Cy + F)`.
    pub fn half_gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.a * x + self.b * y + self.d,
            self.b * x + self.c * y + self.f,
        )
    }

    /// Centre from the generic formulas `((CD − BF), (AF − BD)) / (B² − AC)`.
    pub fn generic_center(&self) -> (f64, f64) {
        let den = self.b * self.b - self.a * self.c;
        (
            (self.c * self.d - self.b * self.f) / den,
            (self.a * self.f - self.b * self.d) / den,
        )
    }

    /// The same curve in `m = 2x − 1`, `n = 2y − 1`, as
    /// `[m², n², mn, m, n, 1]` coefficients of a polynomial equal to zero.
    pub fn correlation_form(&self) -> [f64; 6] {
        let (a, b, c, d, f, g) = (self.a, self.b, self.c, self.d, self.f, self.g);
        [
            a / 4.0,
            c / 4.0,
            b / 2.0,
            (a + b) / 2.0 + d,
            (b + c) / 2.0 + f,
            (a + c) / 4.0 + b / 2.0 + d + f + g,
        ]
    }
}

/// Derivation intermediates kept for inspection and identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicIntermediates {
    pub ratio: f64,
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub delta: f64,
    /// `δ + γ`
    pub l: f64,
    /// `δ γ`
    pub l_prime: f64,
}

/// `x = X_C + T cos(ξ + κ)`, `y = Y_C + T′ cos(ξ + κ′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParametricForm {
    pub t_amp: f64,
    pub kappa: f64,
    pub t_amp_prime: f64,
    pub kappa_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseGeometry {
    pub effect_b: PovmElement,
    pub effect_b_prime: PovmElement,
    pub mu: f64,
    pub coeffs: ConicCoefficients,
    pub intermediates: ConicIntermediates,
    pub center: (f64, f64),
    /// `(a_plus, a_minus)`, major first, in probability coordinates.
    pub semi_axes: (f64, f64),
    /// Angle in `[0, π/2)` of one principal axis, measured counterclockwise from x.
    pub rotation: f64,
    /// Semi-axis lying along `rotation`, and the one perpendicular to it.
    pub axis_along_rotation: (f64, f64),
    pub parametric: ParametricForm,
}

impl EllipseGeometry {
    /// Semi-axes of the correlation-space ellipse `(2x − 1, 2y − 1)`.
    pub fn correlation_semi_axes(&self) -> (f64, f64) {
        (2.0 * self.semi_axes.0, 2.0 * self.semi_axes.1)
    }

    pub fn residual(&self, x: f64, y: f64) -> f64 {
        self.coeffs.evaluate(x, y)
    }
}

/// Geometry of the ellipse for effects `eb`, `eb_prime` with eigenvector overlap `mu`.
pub fn povm_ellipse(eb: &PovmElement, eb_prime: &PovmElement, mu: f64) -> Result<EllipseGeometry> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::DegenerateMu { mu });
    }
    let eb = PovmElement::new(eb.k, eb.lam2)?;
    let eb_prime = PovmElement::new(eb_prime.k, eb_prime.lam2)?;

    let ratio = eb_prime.k / eb.k;
    let overlap = (mu * (1.0 - mu)).sqrt();
    let r = ratio * mu;
    let s = ratio * (1.0 - mu);
    let t = 2.0 * ratio * overlap;
    let alpha = eb_prime.lam2;
    let gamma = eb.lam2;
    let delta = eb.k + eb.lam2;
    let (l, l_prime) = (delta + gamma, delta * gamma);

    let b = s - r;
    let f = r * gamma - s * delta - alpha;
    let coeffs = ConicCoefficients {
        a: ratio * ratio,
        b,
        c: 1.0,
        d: b * f - t * t * l / 2.0,
        f,
        g: f * f + t * t * l_prime,
    };
    let center = (eb.k / 2.0 + eb.lam2, eb_prime.k / 2.0 + eb_prime.lam2);

    // S± = ±√Q − (β² + 1); the + branch is rewritten to avoid cancellation.
    let sum = ratio * ratio + 1.0;
    let q = sum * sum - 16.0 * ratio * ratio * mu * (1.0 - mu);
    let s_plus = -16.0 * ratio * ratio * mu * (1.0 - mu) / (q.sqrt() + sum);
    let s_minus = -q.sqrt() - sum;
    let axis = |s_branch: f64| eb_prime.k * overlap * (-2.0 / s_branch).sqrt();
    let (mut a_plus, mut a_minus) = (axis(s_plus), axis(s_minus));
    if a_plus < a_minus {
        std::mem::swap(&mut a_plus, &mut a_minus);
    }

    let mut rotation = 0.5 * (2.0 * coeffs.b).atan2(coeffs.a - coeffs.c);
    rotation = rotation.rem_euclid(FRAC_PI_2);
    if rotation >= FRAC_PI_2 {
        rotation = 0.0;
    }
    let quad = |ang: f64| {
        let (sn, cs) = ang.sin_cos();
        coeffs.a * cs * cs + 2.0 * coeffs.b * cs * sn + coeffs.c * sn * sn
    };
    // The larger quadratic-form value marks the shorter axis.
    let axis_along_rotation = if quad(rotation) <= quad(rotation + FRAC_PI_2) {
        (a_plus, a_minus)
    } else {
        (a_minus, a_plus)
    };
    let (ax, bx) = axis_along_rotation;
    let (sp, cp) = rotation.sin_cos();
    let parametric = ParametricForm {
        t_amp: ((ax * cp).powi(2) + (bx * sp).powi(2)).sqrt(),
        kappa: (bx * sp).atan2(ax * cp),
        t_amp_prime: ((ax * sp).powi(2) + (bx * cp).powi(2)).sqrt(),
        kappa_prime: (-bx * cp).atan2(ax * sp),
    };

    Ok(EllipseGeometry {
        effect_b: eb,
        effect_b_prime: eb_prime,
        mu,
        coeffs,
        intermediates: ConicIntermediates {
            ratio,
            r,
            s,
            t,
            alpha,
            gamma,
            delta,
            l,
            l_prime,
        },
        center,
        semi_axes: (a_plus, a_minus),
        rotation,
        axis_along_rotation,
        parametric,
    })
}

/// `(p(1|B), p(1|B′))` at parameter `xi`.
pub fn ellipse_point(geom: &EllipseGeometry, xi: f64) -> (f64, f64) {
    let p = &geom.parametric;
    (
        geom.center.0 + p.t_amp * (xi + p.kappa).cos(),
        geom.center.1 + p.t_amp_prime * (xi + p.kappa_prime).cos(),
    )
}

/// Sampled boundaries of the four correlation sets, as measurement-basis
/// 4-vectors `(⟨AB⟩, ⟨A′B⟩, ⟨AB′⟩, ⟨A′B′⟩)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySets {
    pub xi: Vec<f64>,
    /// `m e1 + n e2`
    pub c1: Vec<[f64; 4]>,
    /// `m e3 + n e4`
    pub c2: Vec<[f64; 4]>,
    pub c3: Vec<[f64; 4]>,
    pub c4: Vec<[f64; 4]>,
}

impl BoundarySets {
    pub fn all_points(&self) -> impl Iterator<Item = &[f64; 4]> {
        self.c1.iter().chain(&self.c2).chain(&self.c3).chain(&self.c4)
    }
}

/// Samples `n` values of ξ and emits `C1..C4` with `m = 2x − 1`, `n = 2y − 1`.
pub fn boundary_sets(geom: &EllipseGeometry, n: usize) -> Result<BoundarySets> {
    if n < MIN_BOUNDARY_SAMPLES {
        return Err(Error::DiscretizationTooCoarse {
            given: n,
            min: MIN_BOUNDARY_SAMPLES,
        });
    }
    let xi: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
    let mut sets = BoundarySets {
        xi: xi.clone(),
        c1: Vec::with_capacity(n),
        c2: Vec::with_capacity(n),
        c3: Vec::with_capacity(n),
        c4: Vec::with_capacity(n),
    };
    for &x in &xi {
        let (px, py) = ellipse_point(geom, x);
        let (m, nn) = (2.0 * px - 1.0, 2.0 * py - 1.0);
        sets.c1.push([m, m, nn, nn]);
        sets.c2.push([m, -m, nn, -nn]);
        sets.c3.push([-m, -m, -nn, -nn]);
        sets.c4.push([-m, m, -nn, nn]);
    }
    Ok(sets)
}

/// LP membership of measurement-basis `v` in the hull of all four sampled boundaries.
pub fn povm_hull_membership(v: &[f64; 4], geom: &EllipseGeometry, n: usize) -> Result<HullMembership> {
    if n < MIN_HULL_SAMPLES {
        return Err(Error::DiscretizationTooCoarse {
            given: n,
            min: MIN_HULL_SAMPLES,
        });
    }
    let sets = boundary_sets(geom, n)?;
    let points: Vec<Vec<f64>> = sets.all_points().map(|p| p.to_vec()).collect();
    Ok(HullMembership::from_lp(convex_combination(&points, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::{steering_hull_membership, BOUNDARY_BAND};
    use crate::quantum::random::seeded_rng;
    use crate::quantum::CorrelationVector;
    use crate::steering::beta_from_mu;
    use nalgebra::{Matrix2, SymmetricEigen};
    use rand::Rng;
    use std::f64::consts::FRAC_PI_4;

    /// Independent boundary sampler: Bob's pure state `cos(ω/2)|1⟩ + sin(ω/2)|2⟩`
    /// (real amplitudes cover both extremal relative phases).
    fn pure_state_sweep(eb: &PovmElement, ebp: &PovmElement, mu: f64, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|j| {
                let w = TAU * j as f64 / n as f64;
                let (s, c) = (w / 2.0).sin_cos();
                let x = eb.lam2 + eb.k * c * c;
                let amp = mu.sqrt() * c + (1.0 - mu).sqrt() * s;
                (x, ebp.lam2 + ebp.k * amp * amp)
            })
            .collect()
    }

    fn random_geometry(rng: &mut impl Rng) -> EllipseGeometry {
        let mut effect = || {
            let k = rng.random_range(0.05..1.0);
            let lam2 = rng.random_range(0.0..(1.0 - k));
            PovmElement::new(k, lam2).unwrap()
        };
        let (eb, ebp) = (effect(), effect());
        let mu = rng.random_range(0.02..0.98);
        povm_ellipse(&eb, &ebp, mu).unwrap()
    }

    #[test]
    fn effect_validation() {
        assert!(matches!(PovmElement::new(0.0, 0.2), Err(Error::TrivialEffect { .. })));
        assert!(matches!(PovmElement::new(0.6, 0.5), Err(Error::InvalidEffect { .. })));
        assert!(PovmElement::new(0.5, -0.1).is_err());
        assert_eq!(PovmElement::new(0.7, 0.3).unwrap().lam1(), 1.0);
        let p = PovmElement::projective();
        assert!(matches!(povm_ellipse(&p, &p, 0.0), Err(Error::DegenerateMu { .. })));
        assert!(matches!(povm_ellipse(&p, &p, 1.0), Err(Error::DegenerateMu { .. })));
        let bad = PovmElement { k: 0.0, lam2: 0.1 };
        assert!(matches!(povm_ellipse(&bad, &p, 0.5), Err(Error::TrivialEffect { .. })));
    }

    #[test]
    fn projective_checkpoints() {
        let p = PovmElement::projective();
        for mu in [0.1, 0.3, 0.5, 0.8] {
            let g = povm_ellipse(&p, &p, mu).unwrap();
            assert_eq!(g.center, (0.5, 0.5));
        }
        let g = povm_ellipse(&p, &p, 0.5).unwrap();
        let (ap, am) = g.correlation_semi_axes();
        assert!((ap - 1.0).abs() < 1e-12 && (am - 1.0).abs() < 1e-12);
        assert!((g.semi_axes.0 - 0.5).abs() < 1e-12);
        let g = povm_ellipse(&p, &p, 0.3).unwrap();
        assert!((g.rotation - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn coefficient_identities() {
        let mut rng = seeded_rng(12);
        for _ in 0..200 {
            let g = random_geometry(&mut rng);
            let (c, i) = (g.coeffs, g.intermediates);
            assert!((c.a - (c.b * c.b + i.t * i.t)).abs() < 1e-12);
            assert!((c.d - (c.b * c.f - i.t * i.t * i.l / 2.0)).abs() < 1e-12);
            assert!((c.g - (c.f * c.f + i.t * i.t * i.l_prime)).abs() < 1e-12);
            assert!(c.a * c.c - c.b * c.b > 0.0);
            // Numerator of the generic semi-axis formula collapses to t⁴k²/2.
            let num = 2.0
                * (c.a * c.f * c.f + c.c * c.d * c.d + c.g * c.b * c.b
                    - 2.0 * c.b * c.d * c.f
                    - c.a * c.c * c.g);
            let k = g.effect_b.k;
            let expect = i.t.powi(4) * k * k / 2.0;
            assert!((num - expect).abs() <= 1e-9 * expect.max(1.0), "{num} vs {expect}");
        }
    }

    #[test]
    fn centre_matches_generic_formula_and_gradient() {
        let mut rng = seeded_rng(13);
        for _ in 0..200 {
            let g = random_geometry(&mut rng);
            let (gx, gy) = g.coeffs.generic_center();
            assert!((gx - g.center.0).abs() < 1e-9 && (gy - g.center.1).abs() < 1e-9);
            let (dx, dy) = g.coeffs.half_gradient(g.center.0, g.center.1);
            assert!(dx.abs() < 1e-9 && dy.abs() < 1e-9);
        }
    }

    #[test]
    fn physical_sweep_lies_on_the_conic() {
        let mut rng = seeded_rng(14);
        for _ in 0..100 {
            let g = random_geometry(&mut rng);
            for (x, y) in pure_state_sweep(&g.effect_b, &g.effect_b_prime, g.mu, 257) {
                assert!(g.residual(x, y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parametric_points_lie_on_the_conic() {
        let mut rng = seeded_rng(15);
        for _ in 0..100 {
            let g = random_geometry(&mut rng);
            for j in 0..360 {
                let (x, y) = ellipse_point(&g, j as f64 * TAU / 360.0);
                assert!(g.residual(x, y).abs() < 1e-9, "{g:?}");
                assert!((-1e-12..=1.0 + 1e-12).contains(&x));
                assert!((-1e-12..=1.0 + 1e-12).contains(&y));
            }
        }
    }

    #[test]
    fn ellipse_point_is_periodic_and_spans_the_effect_range() {
        let eb = PovmElement::new(0.8, 0.1).unwrap();
        let ebp = PovmElement::new(0.6, 0.2).unwrap();
        let g = povm_ellipse(&eb, &ebp, 0.3).unwrap();
        let (x0, y0) = ellipse_point(&g, 0.7);
        let (x1, y1) = ellipse_point(&g, 0.7 + TAU);
        assert!((x0 - x1).abs() < 1e-15 && (y0 - y1).abs() < 1e-15);

        let xs: Vec<f64> = (0..100_000).map(|j| ellipse_point(&g, j as f64 * TAU / 1e5).0).collect();
        let (lo, hi) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        assert!((lo - eb.lam2).abs() < 1e-9);
        assert!((hi - eb.lam1()).abs() < 1e-9);
    }

    #[test]
    fn semi_axes_match_grid_oracle() {
        let mut rng = seeded_rng(16);
        for _ in 0..30 {
            let g = random_geometry(&mut rng);
            let pts = pure_state_sweep(&g.effect_b, &g.effect_b_prime, g.mu, 100_000);
            let n = pts.len() as f64;
            let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
            let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
            let dist: Vec<f64> = pts.iter().map(|p| (p.0 - cx).hypot(p.1 - cy)).collect();
            let far = dist.iter().cloned().fold(f64::MIN, f64::max);
            let near = dist.iter().cloned().fold(f64::MAX, f64::min);
            assert!((far - g.semi_axes.0).abs() < 1e-6, "{far} vs {:?}", g.semi_axes);
            assert!((near - g.semi_axes.1).abs() < 1e-6, "{near} vs {:?}", g.semi_axes);
        }
    }

    #[test]
    fn rotation_matches_principal_axes() {
        let mut rng = seeded_rng(17);
        for _ in 0..200 {
            let g = random_geometry(&mut rng);
            let c = g.coeffs;
            let eig = SymmetricEigen::new(Matrix2::new(c.a, c.b, c.b, c.c));
            let v = eig.eigenvectors.column(0);
            let ang = v[1].atan2(v[0]).rem_euclid(FRAC_PI_2);
            let diff = (ang - g.rotation).rem_euclid(FRAC_PI_2);
            assert!(diff.min(FRAC_PI_2 - diff) < 1e-9, "{ang} vs {}", g.rotation);
        }
    }

    #[test]
    fn projective_correlation_conic_reduces_to_projective_ellipse() {
        let p = PovmElement::projective();
        for mu in [0.05, 0.3, 0.5, 0.77, 0.95] {
            let g = povm_ellipse(&p, &p, mu).unwrap();
            let form = g.coeffs.correlation_form();
            let norm: Vec<f64> = form.iter().map(|v| v / form[0]).collect();
            let beta = beta_from_mu(mu).unwrap();
            let expect = [1.0, 1.0, -2.0 * (2.0 * beta).cos(), 0.0, 0.0, -(2.0 * beta).sin().powi(2)];
            for i in 0..6 {
                assert!((norm[i] - expect[i]).abs() < 1e-12, "mu {mu}: {norm:?}");
            }
        }
    }

    #[test]
    fn boundary_set_examples() {
        let p = PovmElement::projective();
        let g = povm_ellipse(&p, &p, 0.5).unwrap();
        let sets = boundary_sets(&g, 64).unwrap();
        for (c1, c3) in sets.c1.iter().zip(&sets.c3) {
            let e = CorrelationVector::measurement(*c1).e_components();
            assert!((e[0] * e[0] + e[1] * e[1] - 1.0).abs() < 1e-9);
            for i in 0..4 {
                assert_eq!(c3[i], -c1[i]);
            }
        }

        let eb = PovmElement::new(0.8, 0.1).unwrap();
        let ebp = PovmElement::new(0.6, 0.2).unwrap();
        let g = povm_ellipse(&eb, &ebp, 0.3).unwrap();
        let form = g.coeffs.correlation_form();
        let sets = boundary_sets(&g, 128).unwrap();
        for c1 in &sets.c1 {
            let e = CorrelationVector::measurement(*c1).e_components();
            let (m, n) = (e[0], e[1]);
            let res = form[0] * m * m + form[1] * n * n + form[2] * m * n + form[3] * m + form[4] * n + form[5];
            assert!(res.abs() < 1e-9);
        }
        for c2 in &sets.c2 {
            let e = CorrelationVector::measurement(*c2).e_components();
            assert!(e[0].abs() < 1e-15 && e[1].abs() < 1e-15);
        }
        assert!(boundary_sets(&g, 8).is_err());
    }

    #[test]
    fn povm_hull_examples() {
        let eb = PovmElement::new(0.8, 0.1).unwrap();
        let ebp = PovmElement::new(0.6, 0.2).unwrap();
        let g = povm_ellipse(&eb, &ebp, 0.3).unwrap();
        assert!(povm_hull_membership(&[0.0; 4], &g, 64).unwrap().inside);
        let vertex = boundary_sets(&g, 64).unwrap().c1[5];
        assert!(povm_hull_membership(&vertex, &g, 64).unwrap().inside);
        assert!(!povm_hull_membership(&[1.0, 1.0, 1.0, 1.0], &g, 64).unwrap().inside);
        assert!(povm_hull_membership(&[0.0; 4], &g, 32).is_err());
    }

    #[test]
    fn projective_povm_hull_matches_steering_hull() {
        let mut rng = seeded_rng(18);
        let p = PovmElement::projective();
        let mut checked = 0;
        while checked < 200 {
            let mu = rng.random_range(0.1..0.9);
            let g = povm_ellipse(&p, &p, mu).unwrap();
            let beta = beta_from_mu(mu).unwrap();
            let scale = rng.random_range(0.0..1.0);
            let v: [f64; 4] = std::array::from_fn(|_| scale * rng.random_range(-1.0..1.0));
            let closed = steering_hull_membership(&CorrelationVector::measurement(v), beta).unwrap();
            if closed.margin() < BOUNDARY_BAND {
                continue;
            }
            let lp = povm_hull_membership(&v, &g, 720).unwrap();
            assert_eq!(lp.inside, closed.inside, "{v:?} mu {mu}");
            checked += 1;
        }
    }
}
