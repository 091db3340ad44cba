//! Model construction: the two-qubit minimal QET model, general `Z + XX`
//! chains, ground states, constant shifts and the optimal rotation angle.

pub mod chain;
pub mod minimal;
pub mod theta;

pub use chain::{exact_ground_state, GeneralChainModel, GroundState, MAX_CHAIN_SITES};
pub use minimal::{minimal_ground_state, minimal_terms, minimal_theta, MinimalModel, MinimalTerms};
pub use theta::{general_theta, normalize_constants, ThetaSolution};
