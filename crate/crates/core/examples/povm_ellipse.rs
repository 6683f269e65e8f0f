//! Geometry of the probability ellipse for two noisy dichotomic POVMs, and
//! hull membership against its four correlation-space copies.

use steerscope::povm::{boundary_sets, ellipse_point, povm_ellipse, povm_hull_membership, EllipseGeometry, PovmElement};

pub struct PovmSummary {
    pub geometry: EllipseGeometry,
    pub max_residual: f64,
    pub origin_inside: bool,
    pub corner_inside: bool,
}

pub fn run_example() -> PovmSummary {
    let eb = PovmElement::new(0.8, 0.1).unwrap();
    let ebp = PovmElement::new(0.6, 0.2).unwrap();
    let geometry = povm_ellipse(&eb, &ebp, 0.3).unwrap();
    let sets = boundary_sets(&geometry, 360).unwrap();
    let max_residual = sets
        .xi
        .iter()
        .map(|&xi| {
            let (x, y) = ellipse_point(&geometry, xi);
            geometry.residual(x, y).abs()
        })
        .fold(0.0, f64::max);
    PovmSummary {
        origin_inside: povm_hull_membership(&[0.0; 4], &geometry, 180).unwrap().inside,
        corner_inside: povm_hull_membership(&[0.9, 0.9, 0.9, 0.9], &geometry, 180).unwrap().inside,
        geometry,
        max_residual,
    }
}

fn main() {
    let s = run_example();
    let g = &s.geometry;
    println!("centre          ({:.6}, {:.6})", g.center.0, g.center.1);
    println!("semi-axes       {:.6}, {:.6} (probability space)", g.semi_axes.0, g.semi_axes.1);
    let (cp, cm) = g.correlation_semi_axes();
    println!("semi-axes       {cp:.6}, {cm:.6} (correlation space)");
    println!("rotation        {:.6} rad", g.rotation);
    println!("max |residual|  {:.2e}", s.max_residual);
    println!("origin in hull  {}", s.origin_inside);
    println!("(0.9,..) in hull {}", s.corner_inside);
}
