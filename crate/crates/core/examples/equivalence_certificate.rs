//! Seeded ensemble check that the steering maximum equals the CHSH maximum.

use steerscope::nonlocality::{certify_equivalence, EquivalenceCertificate};

pub fn run_example() -> EquivalenceCertificate {
    certify_equivalence(42, 2_000).unwrap()
}

fn main() {
    let cert = run_example();
    println!("{}", serde_json::to_string_pretty(&cert).unwrap());
}
