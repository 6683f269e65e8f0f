//! The closed-form hull inequality against a linear program over sampled
//! extreme points.

use steerscope::hull::{
    check_membership, hull_inequality, lp_hull_membership, PlanarConicSet, DEFAULT_DISCRETIZATION,
};
use steerscope::quantum::random::seeded_rng;
use steerscope::steering::beta_from_mu;
use steerscope::CorrelationVector;
use rand::Rng;

pub struct HullSummary {
    pub checked: usize,
    pub disagreements: usize,
    /// Closed-form and LP verdicts for two ellipses with unequal bounds.
    pub unequal_bounds: Vec<(bool, bool)>,
}

pub fn run_example() -> HullSummary {
    let beta = beta_from_mu(0.3).unwrap();
    let mut rng = seeded_rng(11);
    let mut disagreements = 0;
    let checked = 200;
    for _ in 0..checked {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let m = check_membership(&CorrelationVector::measurement(v), beta, DEFAULT_DISCRETIZATION).unwrap();
        if !m.consistent(steerscope::hull::BOUNDARY_BAND) {
            disagreements += 1;
        }
    }

    let s1 = PlanarConicSet::new(1.0, 1.0, 0.3, 0.5, (0, 1)).unwrap();
    let s2 = PlanarConicSet::new(2.0, 1.0, -0.4, 1.5, (2, 3)).unwrap();
    let unequal_bounds = [[0.2, 0.1, 0.3, -0.2], [0.6, 0.0, 0.0, 0.6], [0.1, -0.1, 0.9, 0.2]]
        .iter()
        .map(|v| {
            let closed = hull_inequality(&s1, &s2, v).unwrap();
            let lp = lp_hull_membership(&s1, &s2, v, 720).unwrap();
            (closed.inside, lp.inside)
        })
        .collect();
    HullSummary {
        checked,
        disagreements,
        unequal_bounds,
    }
}

fn main() {
    let s = run_example();
    println!("steering hull: {} vectors, {} disagreements outside the band", s.checked, s.disagreements);
    for (i, (closed, lp)) in s.unequal_bounds.iter().enumerate() {
        println!("unequal bounds #{i}: closed form inside={closed}, LP inside={lp}");
    }
}
