//! Maximum steering value and optimal settings for a few textbook states.
//!
//! Run with `cargo run --example analyze_state`.

use steerscope::nonlocality::max_chsh;
use steerscope::quantum::{pure_schmidt, singlet, werner_state};
use steerscope::steering::{max_steering, SteeringReport};
use steerscope::DensityMatrix;

pub fn run_example() -> Vec<(String, SteeringReport, f64)> {
    let states: Vec<(String, DensityMatrix)> = vec![
        ("singlet".into(), singlet()),
        ("werner(0.8)".into(), werner_state(0.8).unwrap()),
        ("werner(0.5)".into(), werner_state(0.5).unwrap()),
        ("schmidt(pi/8)".into(), pure_schmidt(std::f64::consts::PI / 8.0).unwrap()),
    ];
    states
        .into_iter()
        .map(|(name, rho)| {
            let chsh = max_chsh(&rho);
            (name, max_steering(&rho), chsh)
        })
        .collect()
}

fn main() {
    for (name, report, chsh) in run_example() {
        println!("{name}");
        println!("  max steering  {:.10}  (CHSH max {:.10})", report.max_value, chsh);
        println!("  steerable     {}", report.steerable);
        println!("  theta_max     {:.6}", report.theta_max);
        println!("  a  = {:?}", report.a_max.axis().as_slice());
        println!("  a' = {:?}", report.a_prime_max.axis().as_slice());
        println!("  lhs at optimum: general {:.10}, mub {:.10}", report.lhs_general, report.lhs_mub);
    }
}
