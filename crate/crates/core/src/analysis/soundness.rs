//! Random-state attacks on the minimal-model proof.
//!
//! A cheating prover replaces the ground state with `U|00>` for a Haar
//! random `U` and picks the rotation angle freely. For each state and each
//! angle on a uniform grid over `[0, 2pi)` the exact post-round receiver
//! energy is computed; the fraction of strictly negative energies is the
//! chance that a blind guess passes the verifier.

use crate::error::{Error, Result};
use crate::hamiltonian::{minimal_ground_state, minimal_terms, minimal_theta, MinimalModel};
use crate::protocol::ConditionalRotation;
use crate::quantum::{
    branch_measure, haar_random_unitary, state_fidelity, Outcome, Pauli, PauliObservable, PauliString, Statevector, C64,
};
use crate::rng::child_rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackSample {
    /// Index of the random state; its unitary is drawn from `child_rng(seed, seed_id)`.
    pub seed_id: u64,
    pub theta: f64,
    /// Receiver energy averaged over both outcomes with their probabilities.
    pub energy: f64,
    /// `|<g|psi>|^2`.
    pub fidelity: f64,
    /// Probability-weighted contribution of `mu = +1`.
    pub energy_plus: f64,
    /// Probability-weighted contribution of `mu = -1`.
    pub energy_minus: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoundnessResult {
    /// Ordered by state index, then by angle.
    pub samples: Vec<AttackSample>,
    pub negative_fraction: f64,
    /// The true ground state at the optimal angle, excluded from the fraction.
    pub control: AttackSample,
}

/// Exact receiver energy of a faithful round on `psi` at angle `theta`,
/// split into the two outcome branches.
pub fn attack_energy(model: &MinimalModel, psi: &Statevector, theta: f64) -> Result<(f64, f64)> {
    let eb = minimal_terms(model).receiver_energy();
    let branches = branch_measure(psi, &PauliString::single(2, 0, Pauli::X)?)?;
    branch_pair(&eb, &branches.map(|b| (b.outcome, b.probability, b.post_state)), theta)
}

fn branch_pair(
    eb: &PauliObservable,
    branches: &[(Outcome, f64, Statevector); 2],
    theta: f64,
) -> Result<(f64, f64)> {
    let mut out = [0.0; 2];
    for (slot, (mu, p, post)) in out.iter_mut().zip(branches) {
        if *p > 0.0 {
            let rotated = ConditionalRotation::about_y(theta, *mu, 2, 1)?.apply(post)?;
            *slot = p * eb.expectation(&rotated)?;
        }
    }
    Ok((out[0], out[1]))
}

fn sweep_state(
    eb: &PauliObservable,
    g: &Statevector,
    seed_id: u64,
    psi: &Statevector,
    thetas: &[f64],
) -> Result<Vec<AttackSample>> {
    let fidelity = state_fidelity(g, psi)?.clamp(0.0, 1.0);
    let branches = branch_measure(psi, &PauliString::single(2, 0, Pauli::X)?)?
        .map(|b| (b.outcome, b.probability, b.post_state));
    thetas
        .iter()
        .map(|&theta| {
            let (energy_plus, energy_minus) = branch_pair(eb, &branches, theta)?;
            Ok(AttackSample { seed_id, theta, energy: energy_plus + energy_minus, fidelity, energy_plus, energy_minus })
        })
        .collect()
}

/// Runs `n_unitaries x n_thetas` attacks. State `i` is `U_i |00>` with
/// `U_i` drawn from `child_rng(seed, i)`; angle `j` is `2 pi j / n_thetas`.
pub fn soundness_sweep(model: &MinimalModel, n_unitaries: usize, n_thetas: usize, seed: u64) -> Result<SoundnessResult> {
    if n_unitaries == 0 || n_thetas == 0 {
        return Err(Error::Argument("n_unitaries and n_thetas must be positive".into()));
    }
    let eb = minimal_terms(model).receiver_energy();
    let g = minimal_ground_state(model);
    let thetas: Vec<f64> = (0..n_thetas).map(|j| TAU * j as f64 / n_thetas as f64).collect();

    let per_state = (0..n_unitaries as u64)
        .into_par_iter()
        .map(|i| {
            let u = haar_random_unitary(4, &mut child_rng(seed, i))?;
            let column: Vec<C64> = u.column(0).iter().copied().collect();
            let psi = Statevector::from_amplitudes(column)?;
            sweep_state(&eb, &g, i, &psi, &thetas)
        })
        .collect::<Result<Vec<_>>>()?;
    let samples: Vec<AttackSample> = per_state.into_iter().flatten().collect();
    let negative = samples.iter().filter(|s| s.energy < 0.0).count();
    let negative_fraction = negative as f64 / samples.len() as f64;

    let theta_star = minimal_theta(model).theta;
    let control = sweep_state(&eb, &g, u64::MAX, &g, &[theta_star])?[0];
    Ok(SoundnessResult { samples, negative_fraction, control })
}
