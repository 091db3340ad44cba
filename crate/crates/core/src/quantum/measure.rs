//! Two-outcome projective measurement of single-site Pauli operators,
//! `P(mu) = (1 + mu * sigma) / 2`.

use super::{PauliString, Statevector, C64};
use crate::error::{Error, Result};
use crate::rng::SimRng;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Branch probabilities at or below this are treated as exactly zero.
const ZERO_BRANCH: f64 = 1e-24;

/// A measurement outcome `mu` in `{-1, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn sign(self) -> f64 {
        f64::from(self.value())
    }

    pub fn flipped(self) -> Outcome {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }

    /// Computational-basis bit for a Z measurement: `+1 -> 0`, `-1 -> 1`.
    pub fn bit(self) -> u8 {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }
}

impl From<Outcome> for i8 {
    fn from(o: Outcome) -> i8 {
        o.value()
    }
}

impl TryFrom<i8> for Outcome {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            other => Err(format!("outcome must be +1 or -1, got {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: Outcome,
    pub probability: f64,
    /// Renormalized `P(mu)|psi>`. For a zero-probability branch this is the
    /// unmeasured input state, kept only as a placeholder.
    pub post_state: Statevector,
}

fn checked_site(state: &Statevector, pauli: &PauliString) -> Result<()> {
    if pauli.n_qubits() != state.n_qubits() {
        return Err(Error::Argument(format!(
            "Pauli string on {} qubits, state on {}",
            pauli.n_qubits(),
            state.n_qubits()
        )));
    }
    if pauli.single_site().is_none() {
        return Err(Error::Argument(format!("{pauli} does not act on exactly one site")));
    }
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::State(format!("state is not normalized (norm^2 = {norm})")));
    }
    Ok(())
}

fn project(state: &Statevector, flipped: &[C64], outcome: Outcome) -> (f64, Vec<C64>) {
    let s = outcome.sign() * 0.5;
    let proj: Vec<C64> = state
        .amplitudes()
        .iter()
        .zip(flipped)
        .map(|(a, b)| a * 0.5 + b * s)
        .collect();
    let p = proj.iter().map(|a| a.norm_sqr()).sum::<f64>();
    (p, proj)
}

fn record(state: &Statevector, outcome: Outcome, p: f64, proj: Vec<C64>) -> MeasurementRecord {
    if p <= ZERO_BRANCH {
        return MeasurementRecord { outcome, probability: 0.0, post_state: state.clone() };
    }
    let norm = p.sqrt();
    let amps = proj.into_iter().map(|a| a / norm).collect();
    MeasurementRecord {
        outcome,
        probability: p,
        post_state: Statevector::from_normalized(state.n_qubits(), amps),
    }
}

/// Both measurement branches, `+1` first. Weights sum to one.
pub fn branch_measure(state: &Statevector, pauli: &PauliString) -> Result<[MeasurementRecord; 2]> {
    checked_site(state, pauli)?;
    let flipped = pauli.apply_raw(state.amplitudes());
    let (p_plus, plus) = project(state, &flipped, Outcome::Plus);
    let (p_minus, minus) = project(state, &flipped, Outcome::Minus);
    Ok([record(state, Outcome::Plus, p_plus, plus), record(state, Outcome::Minus, p_minus, minus)])
}

/// Samples `mu` with probability `<psi|P(mu)|psi>` and collapses the state.
pub fn projective_measure(
    state: &Statevector,
    pauli: &PauliString,
    rng: &mut SimRng,
) -> Result<MeasurementRecord> {
    checked_site(state, pauli)?;
    let flipped = pauli.apply_raw(state.amplitudes());
    let (p_plus, plus) = project(state, &flipped, Outcome::Plus);
    let (p_minus, minus) = project(state, &flipped, Outcome::Minus);
    if p_plus <= ZERO_BRANCH && p_minus <= ZERO_BRANCH {
        return Err(Error::State("both measurement outcomes have zero probability".into()));
    }
    let u: f64 = rng.random();
    if u * (p_plus + p_minus) < p_plus {
        Ok(record(state, Outcome::Plus, p_plus, plus))
    } else {
        Ok(record(state, Outcome::Minus, p_minus, minus))
    }
}
