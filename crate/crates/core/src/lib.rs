//! Exact statevector simulation of quantum interactive proofs that use
//! quantum energy teleportation (QET) as the verification primitive.
//!
//! The crate is split along the lines of the protocol stack:
//!
//! * [`quantum`]: dense statevectors, Pauli observables, projective
//!   measurement, weighted ensembles and Haar sampling.
//! * [`hamiltonian`]: the two-qubit minimal QET model, general
//!   `Z + XX` chains, ground states and the optimal rotation angle.
//! * [`protocol`]: LOCC party bookkeeping, state teleportation and the
//!   QIP, QSD and multi-prover QMIP* runs.
//! * [`analysis`]: closed-form energies, the Haar attack sweep and the
//!   zero-knowledge level sets.
//!
//! Qubit ordering: site 0 is the leftmost label in a ket, `|q0 q1 ...>`,
//! and therefore the most significant bit of an amplitude index.

pub mod analysis;
pub mod error;
pub mod hamiltonian;
pub mod protocol;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
