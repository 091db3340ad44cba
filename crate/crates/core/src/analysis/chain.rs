//! One energy-teleportation round on a general chain, evaluated exactly.

use crate::error::{Error, Result};
use crate::hamiltonian::{exact_ground_state, general_theta, normalize_constants, GeneralChainModel};
use crate::protocol::qet_ensemble;
use crate::quantum::{Pauli, PauliObservable, PauliString};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub ground_energy: f64,
    pub theta: f64,
    pub xi: f64,
    pub eta: f64,
    /// `(xi - sqrt(xi^2 + eta^2)) / 2`.
    pub energy_closed: f64,
    /// Change of the total energy between a rotated and an unrotated round.
    pub energy_ensemble: f64,
}

/// Measures `X` on `site_a`, rotates about `Y` on `site_b` at the optimal angle.
pub fn chain_qet_report(chain: &GeneralChainModel, site_a: usize, site_b: usize) -> Result<ChainReport> {
    let n = chain.n_sites();
    if site_a == site_b || site_a >= n || site_b >= n {
        return Err(Error::Argument(format!("invalid sites ({site_a}, {site_b}) on a {n}-site chain")));
    }
    let gs = exact_ground_state(chain)?;
    let terms = normalize_constants(&chain.local_terms()?, &gs.state)?;
    let sigma_a = PauliString::single(n, site_a, Pauli::X)?;
    let sigma_b = PauliString::single(n, site_b, Pauli::Y)?;
    let sol = general_theta(&terms, &sigma_a, &sigma_b, &gs.state)?;
    let h = PauliObservable::sum(&terms)?;
    let rotated = qet_ensemble(&gs.state, site_a, site_b, sol.theta, true)?.expectation(&h)?;
    let measured = qet_ensemble(&gs.state, site_a, site_b, 0.0, true)?.expectation(&h)?;
    Ok(ChainReport {
        ground_energy: gs.energy,
        theta: sol.theta,
        xi: sol.xi,
        eta: sol.eta,
        energy_closed: sol.receiver_energy(),
        energy_ensemble: rotated - measured,
    })
}
