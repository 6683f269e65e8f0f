//! Two-qubit states, Pauli algebra and correlation evaluation.

pub mod correlation;
pub mod observable;
pub mod pauli;
pub mod random;
pub mod state;

pub use correlation::{
    chsh_value, correlation, correlation_vector, trace_correlation, Basis, CorrelationVector,
};
pub use observable::BlochObservable;
pub use random::random_state;
pub use state::{
    bell_state, make_state, maximally_mixed, pure_schmidt, singlet, werner_state, ComplexMatrix,
    DensityMatrix,
};
