use thiserror::Error;

/// Every failure the library can report.
///
/// The `Display` form always starts with the variant name so that callers
/// parsing messages (and humans reading CLI output) can see which invariant
/// was violated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("WrongShape: expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    WrongShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("NotHermitian: max |m - m^dagger| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("NotUnitTrace: |Tr(m) - 1| = {deviation:e} exceeds {tolerance:e}")]
    NotUnitTrace { deviation: f64, tolerance: f64 },

    #[error("NotPositive: minimum eigenvalue {min_eigenvalue:e} below {tolerance:e}")]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("CorrelationOutOfRange: |t_mn| = {magnitude} exceeds 1")]
    CorrelationOutOfRange { magnitude: f64 },

    #[error("OutOfRange: {name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("NotUnitAxis: |axis| = {norm} (must be 1 within 1e-12)")]
    NotUnitAxis { norm: f64 },

    #[error("WrongBasis: expected {expected} basis")]
    WrongBasis { expected: &'static str },

    #[error("DegenerateMeasurementPair: sin(2 beta) = {sin_two_beta:e} (b' = +-b)")]
    DegenerateMeasurementPair { sin_two_beta: f64 },

    #[error("BobPairNotOrthogonal: b . b'' = {dot:e}")]
    BobPairNotOrthogonal { dot: f64 },

    #[error("DegenerateAlicePair: |a + a'| = {sum_norm:e}, |a - a'| = {diff_norm:e}")]
    DegenerateAlicePair { sum_norm: f64, diff_norm: f64 },

    #[error("InvalidConic: {0}")]
    InvalidConic(String),

    #[error("OverlappingPlanes: axis pairs {first:?} and {second:?} share an axis")]
    OverlappingPlanes {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("DiscretizationTooCoarse: {given} points, need at least {min}")]
    DiscretizationTooCoarse { given: usize, min: usize },

    #[error("DegenerateMu: mu = {mu} must lie strictly inside (0, 1)")]
    DegenerateMu { mu: f64 },

    #[error("TrivialEffect: eigenvalue gap k = {k} must be positive")]
    TrivialEffect { k: f64 },

    #[error("InvalidEffect: eigenvalues lam2 = {lam2}, lam1 = {lam1} must satisfy 0 <= lam2 <= lam1 <= 1")]
    InvalidEffect { lam2: f64, lam1: f64 },

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
