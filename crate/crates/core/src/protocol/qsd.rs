//! Quantum state discrimination game.
//!
//! The verifier fixes once whether it will act faithfully (`Q1`, `nu = mu`)
//! or unfaithfully (`Q2`, `nu = -mu`). Every shot, the prover measures `X`
//! on its witness, teleports the receiver qubit to the verifier and
//! announces `mu`. The verifier rotates the qubit and teleports it back.
//! The prover then reads the receiver field and the coupling, and guesses
//! the verifier's choice from the sign of the mean coupling energy.
//!
//! ```text
//! site 0  prover    witness qubit
//! site 1  prover    receiver qubit, teleported to site 3
//! site 2  prover    Bell half (link 2-3)
//! site 3  verifier  receives the receiver qubit, rotates it
//! site 4  verifier  Bell half (link 4-5), sends the qubit back
//! site 5  prover    Bell half; final receiver qubit
//! ```

use super::qip::{qet_ensemble, PROVER, VERIFIER};
use super::rotation::ConditionalRotation;
use super::session::{Actor, Party, Payload, Role, Session};
use super::teleport::qst_teleport;
use super::transcript::{Decision, Estimate, ProtocolTranscript, ShotRecord};
use crate::error::{Error, Result};
use crate::hamiltonian::{minimal_ground_state, minimal_theta, MinimalModel};
use crate::quantum::{MixedEnsemble, Outcome, Pauli, Statevector};
use crate::rng::{child_rng, SimRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const WITNESS: usize = 0;
const RECEIVER: usize = 1;
const LINK1_PROVER: usize = 2;
const VERIFIER_SITE: usize = 3;
const LINK2_VERIFIER: usize = 4;
const RETURN_SITE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QsdChoice {
    /// Faithful: `nu = mu`.
    Q1,
    /// Unfaithful: `nu = -mu`.
    Q2,
}

impl QsdChoice {
    pub fn nu(self, mu: Outcome) -> Outcome {
        match self {
            QsdChoice::Q1 => mu,
            QsdChoice::Q2 => mu.flipped(),
        }
    }

    /// `Q1` for a negative energy, `Q2` otherwise.
    fn from_sign(energy: f64) -> Self {
        if energy < 0.0 {
            QsdChoice::Q1
        } else {
            QsdChoice::Q2
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QsdResult {
    pub guess: QsdChoice,
    /// `Q2` iff the receiver-field estimate is negative; a cross-check only.
    pub h1_guess: QsdChoice,
    pub v: Estimate,
    pub h1: Estimate,
    /// `decision` is `Accept` iff the guess matches the verifier's choice.
    pub transcript: ProtocolTranscript,
}

/// The faithful and unfaithful post-round ensembles on the ground state.
pub fn build_qsd_ensembles(model: &MinimalModel, theta: f64) -> Result<(MixedEnsemble, MixedEnsemble)> {
    let g = minimal_ground_state(model);
    Ok((qet_ensemble(&g, 0, 1, theta, true)?, qet_ensemble(&g, 0, 1, theta, false)?))
}

fn qsd_round(
    model: &MinimalModel,
    theta: f64,
    choice: QsdChoice,
    shot: u64,
    rng: &mut SimRng,
) -> Result<(ShotRecord, Session)> {
    let register = minimal_ground_state(model).tensor(&Statevector::basis(4)?)?;
    let mut s = Session::new(
        register,
        vec![
            Party::new(PROVER.0, Role::Prover, [WITNESS, RECEIVER, LINK1_PROVER, RETURN_SITE]),
            Party::new(VERIFIER.0, Role::Verifier, [VERIFIER_SITE, LINK2_VERIFIER]),
        ],
        vec![(LINK1_PROVER, VERIFIER_SITE), (LINK2_VERIFIER, RETURN_SITE)],
        vec![(PROVER, VERIFIER), (VERIFIER, PROVER)],
    )?;
    let prover = Actor::Party(PROVER);
    let verifier = Actor::Party(VERIFIER);

    let mu = s.measure(prover, WITNESS, Pauli::X, rng)?;
    qst_teleport(&mut s, RECEIVER, LINK1_PROVER, VERIFIER_SITE, rng)?;
    s.send(PROVER, VERIFIER, Payload::Outcome(mu))?;

    let mu_seen = match s.recv(VERIFIER, PROVER)? {
        Payload::Outcome(m) => m,
        other => return Err(Error::State(format!("verifier expected mu, got {other:?}"))),
    };
    let nu = choice.nu(mu_seen);
    s.rotate(verifier, &ConditionalRotation::about_y(theta, nu, 6, VERIFIER_SITE)?)?;
    qst_teleport(&mut s, VERIFIER_SITE, LINK2_VERIFIER, RETURN_SITE, rng)?;

    let mut z_copy = s.clone();
    let z = z_copy.measure(prover, RETURN_SITE, Pauli::Z, rng)?;
    let mut x_copy = s.clone();
    let xa = x_copy.measure(prover, WITNESS, Pauli::X, rng)?;
    let xb = x_copy.measure(prover, RETURN_SITE, Pauli::X, rng)?;
    let h1_sample = model.h() * z.sign() + model.field_constant();
    let v_sample = 2.0 * model.k() * xa.sign() * xb.sign() + model.coupling_constant();
    Ok((ShotRecord { shot, mu, nu, h1_sample, v_sample }, s))
}

/// Plays the game at the optimal angle of `model`.
pub fn run_qsd(model: &MinimalModel, choice: QsdChoice, n_shot: u64, seed: u64) -> Result<QsdResult> {
    run_qsd_at(model, minimal_theta(model).theta, choice, n_shot, seed)
}

/// Plays the game with an agreed rotation angle `theta`.
pub fn run_qsd_at(model: &MinimalModel, theta: f64, choice: QsdChoice, n_shot: u64, seed: u64) -> Result<QsdResult> {
    if n_shot == 0 {
        return Err(Error::Argument("n_shot must be positive".into()));
    }
    let rounds = (0..n_shot)
        .into_par_iter()
        .map(|shot| qsd_round(model, theta, choice, shot, &mut child_rng(seed, shot)).map(|(r, _)| r))
        .collect::<Result<Vec<_>>>()?;
    let mut transcript = ProtocolTranscript { rounds, decision: Decision::Undecided };
    let v = transcript.v();
    let h1 = transcript.h1();
    let guess = QsdChoice::from_sign(v.mean);
    // Faithful rotations raise the field energy, so its sign reads the other way round.
    let h1_guess = QsdChoice::from_sign(-h1.mean);
    transcript.decision = if guess == choice { Decision::Accept } else { Decision::Reject };
    Ok(QsdResult { guess, h1_guess, v, h1, transcript })
}
