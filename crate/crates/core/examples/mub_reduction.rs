//! Any pair of Bob measurements with overlap μ gives the same steering test as
//! its mutually-unbiased partner: `B′ = cos 2β B + sin 2β B″`.

use steerscope::quantum::random::{random_axis, random_state, seeded_rng};
use steerscope::quantum::correlation_vector;
use steerscope::steering::{mub_partner, steering_lhs_general, steering_lhs_mub, MeasurementPair};

/// `(mu, general form, MUB form)` for a fixed state and Alice pair.
pub fn run_example() -> Vec<(f64, f64, f64)> {
    let rho = random_state(2024);
    let mut rng = seeded_rng(7);
    let (a, ap) = (random_axis(&mut rng), random_axis(&mut rng));
    [0.1, 0.25, 0.5, 0.75, 0.9]
        .into_iter()
        .map(|mu| {
            let pair = MeasurementPair::from_mu(mu).unwrap();
            let general = steering_lhs_general(&correlation_vector(&rho, &a, &ap, &pair.b, &pair.b_prime), &pair).unwrap();
            let partner = mub_partner(&pair).unwrap();
            let mub = steering_lhs_mub(&correlation_vector(&rho, &a, &ap, &pair.b, &partner));
            (mu, general, mub)
        })
        .collect()
}

fn main() {
    println!("{:>5}  {:>14}  {:>14}  {:>9}", "mu", "general", "mub", "diff");
    for (mu, g, m) in run_example() {
        println!("{mu:>5.2}  {g:>14.10}  {m:>14.10}  {:>9.1e}", (g - m).abs());
    }
}
