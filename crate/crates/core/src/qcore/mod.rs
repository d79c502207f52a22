//! Complex linear algebra and quantum-state primitives, plus generic
//! entanglement measures used as oracles for the model closed forms.

pub mod eigen;
pub mod matrix;
pub mod metrics;
pub mod ops;
pub mod quadrature;
pub mod states;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::CMatrix;
pub use metrics::{bell_fraction, wootters_concurrence, wootters_lambdas};
pub use ops::{
    embed_operator, measure, partial_trace, partial_trace_matrix, permute_qubits,
    project_unnormalized, MeasureOutcome, ZERO_PROBABILITY,
};
pub use quadrature::{bloch_average, bloch_nodes, gauss_legendre, BlochNode};
pub use states::{bell_ket, bloch_ket, ghz_ket, pauli, tensor, DensityOp, Ket, Projector, Tensor};
