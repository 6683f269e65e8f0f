//! The mutually-unbiased steering value depends on Bob's pair only through the
//! plane it spans: every orthonormal pair in the plane of `T(a ± a′)` gives the
//! Bob-free value, and pairs leaving that plane give less.

use steerscope::quantum::random::{random_orthonormal_pair, random_pair_in_plane, seeded_rng};
use steerscope::quantum::singlet;
use steerscope::steering::{decompose_alice, e_steer, e_steer_bob_free, optimal_bob_pair};
use steerscope::BlochObservable;

pub struct IndependenceSummary {
    pub bob_free: f64,
    pub in_plane: Vec<f64>,
    pub unrestricted: Vec<f64>,
}

pub fn run_example() -> IndependenceSummary {
    let rho = singlet();
    let a = BlochObservable::z();
    let ap = BlochObservable::x();
    let bob_free = e_steer_bob_free(&rho, &decompose_alice(&a, &ap).unwrap());
    let (u, w) = optimal_bob_pair(&rho, &a, &ap);
    let mut rng = seeded_rng(3);
    let in_plane = (0..8)
        .map(|_| {
            let (b, bm) = random_pair_in_plane(&mut rng, &u, &w);
            e_steer(&rho, &a, &ap, &b, &bm).unwrap()
        })
        .collect();
    let unrestricted = (0..8)
        .map(|_| {
            let (b, bm) = random_orthonormal_pair(&mut rng);
            e_steer(&rho, &a, &ap, &b, &bm).unwrap()
        })
        .collect();
    IndependenceSummary {
        bob_free,
        in_plane,
        unrestricted,
    }
}

fn main() {
    let s = run_example();
    println!("Bob-free value {:.12}", s.bob_free);
    println!("in-plane pairs:     {:?}", s.in_plane);
    println!("unrestricted pairs: {:?}", s.unrestricted);
}
