use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pauli;
use crate::error::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-12;

/// Dichotomic qubit observable `axis · σ` with outcomes ±1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct BlochObservable {
    axis: Vector3<f64>,
}

impl BlochObservable {
    /// Accepts an axis that is already unit length (within 1e-12).
    pub fn new(axis: Vector3<f64>) -> Result<Self> {
        let norm = axis.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnitAxis { norm });
        }
        Ok(Self { axis })
    }

    /// Normalizes any non-zero direction.
    pub fn from_direction(direction: Vector3<f64>) -> Result<Self> {
        let norm = direction.norm();
        if !(norm.is_finite() && norm > 1e-300) {
            return Err(Error::NotUnitAxis { norm });
        }
        Ok(Self {
            axis: direction / norm,
        })
    }

    pub fn x() -> Self {
        Self {
            axis: Vector3::x(),
        }
    }

    pub fn y() -> Self {
        Self {
            axis: Vector3::y(),
        }
    }

    pub fn z() -> Self {
        Self {
            axis: Vector3::z(),
        }
    }

    pub fn axis(&self) -> &Vector3<f64> {
        &self.axis
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.axis.dot(&other.axis)
    }

    /// The 2×2 operator `axis · σ`.
    pub fn operator(&self) -> Matrix2<Complex64> {
        pauli::axis_operator(&self.axis)
    }
}

impl From<BlochObservable> for [f64; 3] {
    fn from(o: BlochObservable) -> Self {
        [o.axis.x, o.axis.y, o.axis.z]
    }
}

impl TryFrom<[f64; 3]> for BlochObservable {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::new(Vector3::from(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unit_axis() {
        let err = BlochObservable::new(Vector3::new(1.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotUnitAxis { .. }));
        assert!(BlochObservable::from_direction(Vector3::zeros()).is_err());
    }

    #[test]
    fn from_direction_normalizes() {
        let o = BlochObservable::from_direction(Vector3::new(3.0, 0.0, 4.0)).unwrap();
        assert!((o.axis().norm() - 1.0).abs() < 1e-15);
        assert!((o.axis().x - 0.6).abs() < 1e-15);
    }

    #[test]
    fn serializes_as_plain_array() {
        let json = serde_json::to_string(&BlochObservable::z()).unwrap();
        assert_eq!(json, "[0.0,0.0,1.0]");
        let back: BlochObservable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, BlochObservable::z());
        assert!(serde_json::from_str::<BlochObservable>("[1.0,1.0,0.0]").is_err());
    }
}
