//! JSON state and correlation-vector inputs.
//!
//! A state document is either an explicit matrix of `[re, im]` pairs,
//!
//! ```json
//! {"matrix": [[[0.5, 0], [0, 0], [0, 0], [0.5, 0]], ...]}
//! ```
//!
//! or a named family: `{"family": "werner", "eta": 0.7}`,
//! `{"family": "bell", "index": 3}`, `{"family": "pure_schmidt", "angle": 0.4}`.
//!
//! Parsing and validation are separate steps so callers can tell malformed
//! input ([`InputError::Parse`]) from a well-formed document describing
//! something that is not a state ([`InputError::Invalid`]).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::quantum::{bell_state, make_state, pure_schmidt, werner_state, CorrelationVector, DensityMatrix};
use crate::steering::beta_from_mu;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateFamily {
    Werner { eta: f64 },
    Bell { index: usize },
    PureSchmidt { angle: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Matrix { matrix: Vec<Vec<[f64; 2]>> },
    Family(StateFamily),
}

impl StateSpec {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let value: Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| InputError::Parse("state document must be a JSON object".into()))?;
        if obj.contains_key("matrix") {
            let matrix = serde_json::from_value(obj["matrix"].clone())
                .map_err(|e| InputError::Parse(format!("matrix: {e}")))?;
            Ok(StateSpec::Matrix { matrix })
        } else if obj.contains_key("family") {
            Ok(StateSpec::Family(serde_json::from_value(value)?))
        } else {
            Err(InputError::Parse(
                "state document needs a \"matrix\" or a \"family\" key".into(),
            ))
        }
    }

    pub fn build(&self) -> Result<DensityMatrix, Error> {
        match self {
            StateSpec::Matrix { matrix } => {
                let rows = matrix.len();
                let cols = matrix.first().map_or(0, Vec::len);
                if matrix.iter().any(|r| r.len() != cols) {
                    return Err(Error::WrongShape { expected: 4, rows, cols });
                }
                let m = DMatrix::from_fn(rows, cols, |i, j| {
                    let [re, im] = matrix[i][j];
                    Complex64::new(re, im)
                });
                make_state(&m)
            }
            StateSpec::Family(StateFamily::Werner { eta }) => werner_state(*eta),
            StateSpec::Family(StateFamily::Bell { index }) => bell_state(*index),
            StateSpec::Family(StateFamily::PureSchmidt { angle }) => pure_schmidt(*angle),
        }
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        StateSpec::Matrix {
            matrix: (0..4)
                .map(|i| (0..4).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }
}

/// Parses and validates in one step.
pub fn parse_state(text: &str) -> Result<DensityMatrix, InputError> {
    Ok(StateSpec::parse(text)?.build()?)
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&StateSpec::from_state(rho)).expect("plain numbers serialize")
}

/// Correlations `(⟨AB⟩, ⟨A′B⟩, ⟨AB′⟩, ⟨A′B′⟩)` with Bob's overlap given by `mu` or `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullInput {
    pub correlations: [f64; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl HullInput {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    /// `β` from whichever of `mu`/`beta` is present; `mu` wins if both are.
    pub fn beta(&self) -> Result<f64, Error> {
        match (self.mu, self.beta) {
            (Some(mu), _) => beta_from_mu(mu),
            (None, Some(beta)) => Ok(beta),
            (None, None) => Err(Error::InvalidArgument("either mu or beta is required".into())),
        }
    }

    pub fn vector(&self) -> CorrelationVector {
        CorrelationVector::measurement(self.correlations)
    }
}
