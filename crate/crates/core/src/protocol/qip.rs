//! Single-prover interactive proof over the minimal QET model.
//!
//! Each shot runs the six-qubit circuit below. The prover holds the
//! prepared pair on sites 0 (witness) and 1 (receiver qubit) plus the
//! sender halves of two Bell pairs; the verifier holds the other halves.
//!
//! ```text
//! site 0  prover    witness qubit, teleported to site 3
//! site 1  prover    receiver qubit, rotated then teleported to site 5
//! site 2  prover    Bell half (link 2-3)
//! site 3  verifier  Bell half; receives the witness
//! site 4  prover    Bell half (link 4-5)
//! site 5  verifier  Bell half; receives the receiver qubit
//! ```
//!
//! Round: witness teleport, verifier X measurement giving `mu`, one-bit
//! message `mu` to the prover, rotation `U_B(nu)` with `nu = mu` for an
//! honest prover, second teleport, basis announcement, verifier readout.
//! The verifier reads `h Z_5` and `2k X_3 X_5` from two copies of the
//! final state, so every shot carries both an `h1_sample` and a `v_sample`.

use super::rotation::ConditionalRotation;
use super::session::{Actor, Basis, Party, PartyId, Payload, Role, Session};
use super::teleport::qst_teleport;
use super::transcript::{Decision, Estimate, ProtocolTranscript, ShotRecord};
use crate::error::{Error, Result};
use crate::hamiltonian::{minimal_ground_state, minimal_theta, MinimalModel};
use crate::quantum::{branch_measure, projective_measure, Outcome, Pauli, PauliString, Statevector};
use crate::rng::{child_rng, SimRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const PROVER: PartyId = PartyId(0);
pub const VERIFIER: PartyId = PartyId(1);

pub const WITNESS: usize = 0;
pub const RECEIVER: usize = 1;
pub const LINK1_PROVER: usize = 2;
pub const VERIFIER_WITNESS: usize = 3;
pub const LINK2_PROVER: usize = 4;
pub const VERIFIER_RECEIVER: usize = 5;
pub const REGISTER_QUBITS: usize = 6;

/// One-sided 0.001 critical value of the standard normal.
pub const ZTEST_CRITICAL: f64 = 3.090_232_306_167_813;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AcceptRule {
    /// Accept iff the sample mean energy is negative.
    #[default]
    Strict,
    /// Accept iff `z < -z_crit`, reject iff `z > z_crit`, else undecided.
    ZTest,
}

pub fn decide(energy: &Estimate, rule: AcceptRule) -> Decision {
    match rule {
        AcceptRule::Strict => {
            if energy.mean < 0.0 {
                Decision::Accept
            } else {
                Decision::Reject
            }
        }
        AcceptRule::ZTest => {
            let z = energy.z_score();
            if z < -ZTEST_CRITICAL {
                Decision::Accept
            } else if z > ZTEST_CRITICAL {
                Decision::Reject
            } else {
                Decision::Undecided
            }
        }
    }
}

/// What the prover feeds into each round.
#[derive(Clone, Debug, PartialEq)]
pub struct ProverStrategy {
    /// Two-qubit state offered as the ground state, witness first.
    pub state: Statevector,
    pub theta: f64,
    /// `nu = mu` when true, `nu = -mu` otherwise.
    pub faithful: bool,
}

impl ProverStrategy {
    /// Exact ground state, optimal angle, faithful rotation.
    pub fn honest(model: &MinimalModel) -> Self {
        Self { state: minimal_ground_state(model), theta: minimal_theta(model).theta, faithful: true }
    }

    pub fn with_state(state: Statevector, theta: f64) -> Result<Self> {
        if state.n_qubits() != 2 {
            return Err(Error::Argument(format!("prover state must have 2 qubits, got {}", state.n_qubits())));
        }
        Ok(Self { state, theta, faithful: true })
    }

    pub fn nu(&self, mu: Outcome) -> Outcome {
        if self.faithful {
            mu
        } else {
            mu.flipped()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QipSetup {
    pub model: MinimalModel,
    pub prover: ProverStrategy,
    pub rule: AcceptRule,
}

impl QipSetup {
    pub fn honest(model: MinimalModel) -> Self {
        Self { prover: ProverStrategy::honest(&model), model, rule: AcceptRule::Strict }
    }
}

/// Result of a bare two-qubit QET round, without teleportation.
#[derive(Clone, Debug, PartialEq)]
pub struct QetRound {
    pub mu: Outcome,
    pub nu: Outcome,
    pub post_state: Statevector,
}

/// Measures `X` on `site_a`, then applies `U_B(nu)` about `Y` on `site_b`.
pub fn qet_round(
    g: &Statevector,
    site_a: usize,
    site_b: usize,
    theta: f64,
    faithful: bool,
    rng: &mut SimRng,
) -> Result<QetRound> {
    let n = g.n_qubits();
    if site_a == site_b || site_a >= n || site_b >= n {
        return Err(Error::Argument(format!("invalid QET sites ({site_a}, {site_b}) on {n} qubits")));
    }
    let rec = projective_measure(g, &PauliString::single(n, site_a, Pauli::X)?, rng)?;
    let mu = rec.outcome;
    let nu = if faithful { mu } else { mu.flipped() };
    let post_state = ConditionalRotation::about_y(theta, nu, n, site_b)?.apply(&rec.post_state)?;
    Ok(QetRound { mu, nu, post_state })
}

/// `sum_mu U_B(nu(mu)) P_A(mu) |g><g| P_A(mu) U_B(nu(mu))^dagger` as an exact ensemble.
pub fn qet_ensemble(
    g: &Statevector,
    site_a: usize,
    site_b: usize,
    theta: f64,
    faithful: bool,
) -> Result<crate::quantum::MixedEnsemble> {
    let n = g.n_qubits();
    let branches = branch_measure(g, &PauliString::single(n, site_a, Pauli::X)?)?;
    let mut out = Vec::with_capacity(2);
    for b in branches {
        let nu = if faithful { b.outcome } else { b.outcome.flipped() };
        let rotated = ConditionalRotation::about_y(theta, nu, n, site_b)?.apply(&b.post_state)?;
        out.push((b.probability, rotated));
    }
    crate::quantum::MixedEnsemble::new(out)
}

/// Eigenvalue readouts of the receiver field and the coupling on `state`.
///
/// Each term is read from its own copy of `state`: `Z` on `site_b`, then
/// `X` on both sites.
pub fn readout_samples(
    state: &Statevector,
    model: &MinimalModel,
    site_a: usize,
    site_b: usize,
    rng: &mut SimRng,
) -> Result<(f64, f64)> {
    let n = state.n_qubits();
    let z = projective_measure(state, &PauliString::single(n, site_b, Pauli::Z)?, rng)?;
    let xa = projective_measure(state, &PauliString::single(n, site_a, Pauli::X)?, rng)?;
    let xb = projective_measure(&xa.post_state, &PauliString::single(n, site_b, Pauli::X)?, rng)?;
    Ok(energy_samples(model, z.outcome, xa.outcome, xb.outcome))
}

fn energy_samples(model: &MinimalModel, z: Outcome, xa: Outcome, xb: Outcome) -> (f64, f64) {
    let h1 = model.h() * z.sign() + model.field_constant();
    let v = 2.0 * model.k() * xa.sign() * xb.sign() + model.coupling_constant();
    (h1, v)
}

/// The two-party session of one QIP shot, advanced phase by phase.
#[derive(Clone, Debug)]
pub struct QipRound {
    session: Session,
    mu: Option<Outcome>,
    nu: Option<Outcome>,
}

impl QipRound {
    pub fn new(prepared: &Statevector) -> Result<Self> {
        if prepared.n_qubits() != 2 {
            return Err(Error::Argument("the QIP circuit takes a two-qubit prepared state".into()));
        }
        let register = prepared.tensor(&Statevector::basis(REGISTER_QUBITS - 2)?)?;
        let session = Session::new(
            register,
            vec![
                Party::new(PROVER.0, Role::Prover, [WITNESS, RECEIVER, LINK1_PROVER, LINK2_PROVER]),
                Party::new(VERIFIER.0, Role::Verifier, [VERIFIER_WITNESS, VERIFIER_RECEIVER]),
            ],
            vec![(LINK1_PROVER, VERIFIER_WITNESS), (LINK2_PROVER, VERIFIER_RECEIVER)],
            vec![(PROVER, VERIFIER), (VERIFIER, PROVER)],
        )?;
        Ok(Self { session, mu: None, nu: None })
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    /// Step 1: the prover teleports the witness to the verifier.
    pub fn send_witness(&mut self, rng: &mut SimRng) -> Result<()> {
        qst_teleport(&mut self.session, WITNESS, LINK1_PROVER, VERIFIER_WITNESS, rng)?;
        Ok(())
    }

    /// Step 2: the verifier measures `X` on the witness and announces `mu`.
    pub fn verifier_measure(&mut self, rng: &mut SimRng) -> Result<Outcome> {
        let mu = self.session.measure(Actor::Party(VERIFIER), VERIFIER_WITNESS, Pauli::X, rng)?;
        self.session.send(VERIFIER, PROVER, Payload::Outcome(mu))?;
        self.mu = Some(mu);
        Ok(mu)
    }

    /// Step 3: the prover rotates its receiver qubit, teleports it back and
    /// announces the readout bases.
    pub fn prover_respond(&mut self, strategy: &ProverStrategy, rng: &mut SimRng) -> Result<Outcome> {
        let mu = match self.session.recv(PROVER, VERIFIER)? {
            Payload::Outcome(mu) => mu,
            other => return Err(Error::State(format!("prover expected mu, got {other:?}"))),
        };
        let nu = strategy.nu(mu);
        let rotation = ConditionalRotation::about_y(strategy.theta, nu, REGISTER_QUBITS, RECEIVER)?;
        self.session.rotate(Actor::Party(PROVER), &rotation)?;
        qst_teleport(&mut self.session, RECEIVER, LINK2_PROVER, VERIFIER_RECEIVER, rng)?;
        self.session.send(PROVER, VERIFIER, Payload::BasisAnnouncement(vec![Basis::Z, Basis::X]))?;
        self.nu = Some(nu);
        Ok(nu)
    }

    /// Steps 4-5: the verifier reads out `h Z` on a copy of the register and
/// `2k XX` on the register itself.
    pub fn readout(&mut self, model: &MinimalModel, rng: &mut SimRng) -> Result<(f64, f64)> {
        match self.session.recv(VERIFIER, PROVER)? {
            Payload::BasisAnnouncement(_) => {}
            other => return Err(Error::State(format!("verifier expected a basis announcement, got {other:?}"))),
        }
        let verifier = Actor::Party(VERIFIER);
        let mut z_copy = self.session.clone();
        let z = z_copy.measure(verifier, VERIFIER_RECEIVER, Pauli::Z, rng)?;
        let xa = self.session.measure(verifier, VERIFIER_WITNESS, Pauli::X, rng)?;
        let xb = self.session.measure(verifier, VERIFIER_RECEIVER, Pauli::X, rng)?;
        Ok(energy_samples(model, z, xa, xb))
    }

    pub fn outcomes(&self) -> Option<(Outcome, Outcome)> {
        Some((self.mu?, self.nu?))
    }
}

/// Runs one shot and returns its record together with the full session.
pub fn run_qip_round(setup: &QipSetup, shot: u64, rng: &mut SimRng) -> Result<(ShotRecord, QipRound)> {
    let mut round = QipRound::new(&setup.prover.state)?;
    round.send_witness(rng)?;
    let mu = round.verifier_measure(rng)?;
    let nu = round.prover_respond(&setup.prover, rng)?;
    let (h1_sample, v_sample) = round.readout(&setup.model, rng)?;
    Ok((ShotRecord { shot, mu, nu, h1_sample, v_sample }, round))
}

/// Runs `n_shot` independent rounds; shot `i` draws from `child_rng(seed, i)`.
pub fn run_qip(setup: &QipSetup, n_shot: u64, seed: u64) -> Result<ProtocolTranscript> {
    if n_shot == 0 {
        return Err(Error::Argument("n_shot must be positive".into()));
    }
    let rounds = (0..n_shot)
        .into_par_iter()
        .map(|shot| run_qip_round(setup, shot, &mut child_rng(seed, shot)).map(|(rec, _)| rec))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(rounds, setup.rule))
}

pub(crate) fn finish(rounds: Vec<ShotRecord>, rule: AcceptRule) -> ProtocolTranscript {
    let mut t = ProtocolTranscript { rounds, decision: Decision::Undecided };
    t.decision = decide(&t.energy(), rule);
    t
}

/// The same experiment on the bare two-qubit circuit, without teleportation.
pub fn run_direct(setup: &QipSetup, n_shot: u64, seed: u64) -> Result<ProtocolTranscript> {
    if n_shot == 0 {
        return Err(Error::Argument("n_shot must be positive".into()));
    }
    let p = &setup.prover;
    let rounds = (0..n_shot)
        .into_par_iter()
        .map(|shot| {
            let rng = &mut child_rng(seed, shot);
            let r = qet_round(&p.state, 0, 1, p.theta, p.faithful, rng)?;
            let (h1_sample, v_sample) = readout_samples(&r.post_state, &setup.model, 0, 1, rng)?;
            Ok(ShotRecord { shot, mu: r.mu, nu: r.nu, h1_sample, v_sample })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(rounds, setup.rule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::minimal_terms;
    use crate::rng::seeded;

    fn unit() -> MinimalModel {
        MinimalModel::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn faithful_ensemble_energy_at_unit_parameters() {
        let m = unit();
        let ens = qet_ensemble(&minimal_ground_state(&m), 0, 1, minimal_theta(&m).theta, true).unwrap();
        let e = ens.expectation(&minimal_terms(&m).receiver_energy()).unwrap();
        assert!((e - (3.0 - 10f64.sqrt()) / 2f64.sqrt()).abs() < 1e-12);
        assert!((e + 0.1148).abs() < 1e-4);
    }

    #[test]
    fn zero_angle_leaves_zero_energy() {
        let m = unit();
        let ens = qet_ensemble(&minimal_ground_state(&m), 0, 1, 0.0, true).unwrap();
        assert!(ens.expectation(&minimal_terms(&m).receiver_energy()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn unfaithful_round_energy() {
        let m = unit();
        let ens = qet_ensemble(&minimal_ground_state(&m), 0, 1, minimal_theta(&m).theta, false).unwrap();
        let e = ens.expectation(&minimal_terms(&m).receiver_energy()).unwrap();
        // -0.1873 + 0.5198 from the tabulated conditional energies
        assert!((e - 0.3325).abs() < 1e-4);
    }

    #[test]
    fn round_respects_locc_and_message_budget() {
        let setup = QipSetup::honest(unit());
        for shot in 0..20 {
            let (rec, round) = run_qip_round(&setup, shot, &mut child_rng(3, shot)).unwrap();
            round.session().audit().unwrap();
            let from_verifier = round.session().messages_from(VERIFIER);
            assert_eq!(from_verifier.len(), 1);
            assert_eq!(from_verifier[0].payload, Payload::Outcome(rec.mu));
            assert_eq!(round.session().bits_sent(VERIFIER), 1);
            assert_eq!(rec.mu, rec.nu);
        }
    }

    #[test]
    fn samples_are_eigenvalues() {
        let m = MinimalModel::new(1.5, 0.5).unwrap();
        let t = run_qip(&QipSetup::honest(m), 200, 11).unwrap();
        for r in &t.rounds {
            let dh = r.h1_sample - m.field_constant();
            let dv = r.v_sample - m.coupling_constant();
            assert!((dh.abs() - m.h()).abs() < 1e-12);
            assert!((dv.abs() - 2.0 * m.k()).abs() < 1e-12);
        }
    }

    #[test]
    fn qet_round_zero_angle_is_measurement_only() {
        let m = unit();
        let g = minimal_ground_state(&m);
        let r = qet_round(&g, 0, 1, 0.0, true, &mut seeded(4)).unwrap();
        let x0 = PauliString::single(2, 0, Pauli::X).unwrap();
        assert!((x0.expectation(&r.post_state).unwrap() - r.mu.sign()).abs() < 1e-12);
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(matches!(run_qip(&QipSetup::honest(unit()), 0, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn decision_rules() {
        let neg = Estimate { mean: -0.1, std_error: 0.01, n: 100 };
        let flat = Estimate { mean: -0.001, std_error: 0.01, n: 100 };
        let pos = Estimate { mean: 0.2, std_error: 0.01, n: 100 };
        assert_eq!(decide(&neg, AcceptRule::Strict), Decision::Accept);
        assert_eq!(decide(&flat, AcceptRule::Strict), Decision::Accept);
        assert_eq!(decide(&pos, AcceptRule::Strict), Decision::Reject);
        assert_eq!(decide(&neg, AcceptRule::ZTest), Decision::Accept);
        assert_eq!(decide(&flat, AcceptRule::ZTest), Decision::Undecided);
        assert_eq!(decide(&pos, AcceptRule::ZTest), Decision::Reject);
    }
}
