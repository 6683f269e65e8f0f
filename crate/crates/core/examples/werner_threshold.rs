//! Bisection for the Werner visibility at which steering and CHSH violation start.

use steerscope::nonlocality::{max_chsh, werner_threshold};
use steerscope::quantum::werner_state;
use steerscope::steering::max_steering;

pub struct ThresholdSummary {
    pub steering: f64,
    pub chsh: f64,
    /// `(eta, max_steering)` on a coarse grid.
    pub sweep: Vec<(f64, f64)>,
}

pub fn run_example() -> ThresholdSummary {
    let sweep = (0..=10)
        .map(|i| {
            let eta = i as f64 / 10.0;
            (eta, max_steering(&werner_state(eta).unwrap()).max_value)
        })
        .collect();
    ThresholdSummary {
        steering: werner_threshold(|rho| max_steering(rho).max_value, 1e-12),
        chsh: werner_threshold(max_chsh, 1e-12),
        sweep,
    }
}

fn main() {
    let s = run_example();
    for (eta, v) in &s.sweep {
        let bar = "#".repeat((v * 10.0).round() as usize);
        println!("eta {eta:.1}  {v:.6}  {bar}{}", if *v > 2.0 { "  steerable" } else { "" });
    }
    println!("steering threshold {:.12}", s.steering);
    println!("CHSH threshold     {:.12}", s.chsh);
    println!("1/sqrt(2)          {:.12}", std::f64::consts::FRAC_1_SQRT_2);
}
