//! Two-qubit EPR-steering analysis in the CHSH scenario.
//!
//! The crate evaluates the necessary-and-sufficient steering inequality for
//! four correlations `(⟨AB⟩, ⟨A′B⟩, ⟨AB′⟩, ⟨A′B′⟩)` with arbitrary projective
//! measurements on the trusted side, maps it onto its mutually-unbiased
//! equivalent, and computes the state-level maximum together with the optimal
//! settings. The maximum coincides with the Horodecki CHSH maximum; the
//! [`nonlocality`] module checks that over seeded ensembles through an
//! independent code path.
//!
//! The geometry behind the inequality (convex hulls of conic sections, and the
//! ellipses traced by dichotomic POVMs) lives in [`hull`] and [`povm`], each
//! with a brute-force linear-programming oracle.

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod hull;
pub mod io;
pub mod nonlocality;
pub mod povm;
pub mod quantum;
pub mod steering;

pub use error::{Error, Result};
pub use quantum::{BlochObservable, CorrelationVector, DensityMatrix};

/// Version tag written into every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
