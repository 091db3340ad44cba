//! Dense small-register quantum mechanics.

pub mod ensemble;
pub mod gates;
pub mod haar;
pub mod measure;
pub mod pauli;
pub mod state;

pub use ensemble::MixedEnsemble;
pub use haar::{haar_random_unitary, unitarity_residual};
pub use measure::{branch_measure, projective_measure, MeasurementRecord, Outcome};
pub use pauli::{Pauli, PauliObservable, PauliString};
pub use state::{state_fidelity, Statevector};

pub use num_complex::Complex64 as C64;

/// Complex dense matrix used for gates and sampled unitaries.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Tolerance for exact algebra checks (norms, branch weights).
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for unitarity of user-supplied or sampled matrices.
pub const UNITARY_TOL: f64 = 1e-10;
/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 20;
