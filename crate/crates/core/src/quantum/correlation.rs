//! Two-party correlations ⟨AB⟩ and the ordered CHSH correlation vector.

use serde::{Deserialize, Serialize};

use super::observable::BlochObservable;
use super::pauli::{expectation, kron};
use super::state::DensityMatrix;
use crate::error::{Error, Result};

/// `⟨(a·σ)⊗(b·σ)⟩ = b · (T a)`.
pub fn correlation(rho: &DensityMatrix, a: &BlochObservable, b: &BlochObservable) -> f64 {
    b.axis().dot(&(rho.correlation_matrix() * a.axis()))
}

/// The same correlation evaluated as a full 4×4 trace `Tr(ρ A⊗B)`.
pub fn trace_correlation(rho: &DensityMatrix, a: &BlochObservable, b: &BlochObservable) -> f64 {
    expectation(rho.matrix(), &kron(&a.operator(), &b.operator()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `(⟨AB⟩, ⟨A′B⟩, ⟨AB′⟩, ⟨A′B′⟩)`.
    Measurement,
    /// Coefficients on `e1 = (1,1,0,0)`, `e2 = (0,0,1,1)`, `e3 = (1,−1,0,0)`, `e4 = (0,0,1,−1)`.
    EBasis,
}

/// Ordered quadruple of correlations, tagged with the basis it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationVector {
    pub c: [f64; 4],
    pub basis: Basis,
}

impl CorrelationVector {
    pub fn measurement(c: [f64; 4]) -> Self {
        Self {
            c,
            basis: Basis::Measurement,
        }
    }

    pub fn e_basis(v: [f64; 4]) -> Self {
        Self {
            c: v,
            basis: Basis::EBasis,
        }
    }

    /// `v1 = (c1+c2)/2, v2 = (c3+c4)/2, v3 = (c1−c2)/2, v4 = (c3−c4)/2`.
    pub fn to_e_basis(&self) -> Result<Self> {
        if self.basis != Basis::Measurement {
            return Err(Error::WrongBasis {
                expected: "measurement",
            });
        }
        let [c1, c2, c3, c4] = self.c;
        Ok(Self::e_basis([
            (c1 + c2) / 2.0,
            (c3 + c4) / 2.0,
            (c1 - c2) / 2.0,
            (c3 - c4) / 2.0,
        ]))
    }

    /// Inverse of [`to_e_basis`](Self::to_e_basis): `c = Σ v_i e_i`.
    pub fn to_measurement(&self) -> Result<Self> {
        if self.basis != Basis::EBasis {
            return Err(Error::WrongBasis { expected: "e_basis" });
        }
        let [v1, v2, v3, v4] = self.c;
        Ok(Self::measurement([v1 + v3, v1 - v3, v2 + v4, v2 - v4]))
    }

    /// Measurement-basis components regardless of the stored basis.
    pub fn measurement_components(&self) -> [f64; 4] {
        match self.basis {
            Basis::Measurement => self.c,
            Basis::EBasis => self.to_measurement().expect("tagged e_basis").c,
        }
    }

    /// e-basis components regardless of the stored basis.
    pub fn e_components(&self) -> [f64; 4] {
        match self.basis {
            Basis::EBasis => self.c,
            Basis::Measurement => self.to_e_basis().expect("tagged measurement").c,
        }
    }
}

/// `(⟨AB⟩, ⟨A′B⟩, ⟨AB′⟩, ⟨A′B′⟩)` in the measurement basis.
pub fn correlation_vector(
    rho: &DensityMatrix,
    a: &BlochObservable,
    a_prime: &BlochObservable,
    b: &BlochObservable,
    b_prime: &BlochObservable,
) -> CorrelationVector {
    CorrelationVector::measurement([
        correlation(rho, a, b),
        correlation(rho, a_prime, b),
        correlation(rho, a, b_prime),
        correlation(rho, a_prime, b_prime),
    ])
}

/// CHSH combination `⟨AB⟩ + ⟨AB′⟩ + ⟨A′B⟩ − ⟨A′B′⟩`.
pub fn chsh_value(cv: &CorrelationVector) -> f64 {
    let [ab, apb, abp, apbp] = cv.measurement_components();
    ab + abp + apb - apbp
}
