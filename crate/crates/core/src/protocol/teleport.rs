//! Quantum state teleportation between two parties of a [`Session`].

use super::session::{Actor, Payload, Session};
use crate::error::{Error, Result};
use crate::quantum::Pauli;
use crate::rng::SimRng;
use serde::{Deserialize, Serialize};

/// The two correction bits sent from sender to receiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corrections {
    /// Outcome of the source qubit (after `H`); selects a `Z` correction.
    pub z_bit: u8,
    /// Outcome of the sender ancilla; selects an `X` correction.
    pub x_bit: u8,
}

/// Teleports `source` onto `target` using the Bell pair `(sender_ancilla, target)`.
///
/// The pair must start in `|00>`; the entanglement source prepares it,
/// the sender does the Bell-basis measurement, and the receiver applies
/// `X^x_bit` then `Z^z_bit`. Afterwards `source` and `sender_ancilla`
/// hold computational basis states.
pub fn qst_teleport(
    session: &mut Session,
    source: usize,
    sender_ancilla: usize,
    target: usize,
    rng: &mut SimRng,
) -> Result<Corrections> {
    if source == sender_ancilla || source == target || sender_ancilla == target {
        return Err(Error::Argument(format!(
            "teleportation sites overlap: source {source}, ancilla {sender_ancilla}, target {target}"
        )));
    }
    let sender = session
        .owner_of(source)
        .ok_or_else(|| Error::Argument(format!("source site {source} has no owner")))?;
    let receiver = session
        .owner_of(target)
        .ok_or_else(|| Error::Argument(format!("target site {target} has no owner")))?;
    if session.owner_of(sender_ancilla) != Some(sender) {
        return Err(Error::Locc(format!("ancilla {sender_ancilla} is not held by the sender {sender}")));
    }

    session.hadamard(Actor::EntanglementSource, sender_ancilla)?;
    session.cnot(Actor::EntanglementSource, sender_ancilla, target)?;

    let by_sender = Actor::Party(sender);
    session.cnot(by_sender, source, sender_ancilla)?;
    session.hadamard(by_sender, source)?;
    let z_bit = session.measure(by_sender, source, Pauli::Z, rng)?.bit();
    let x_bit = session.measure(by_sender, sender_ancilla, Pauli::Z, rng)?.bit();
    let corrections = Corrections { z_bit, x_bit };

    if sender != receiver {
        session.send(sender, receiver, Payload::Corrections { z_bit, x_bit })?;
        match session.recv(receiver, sender)? {
            Payload::Corrections { z_bit, x_bit } if z_bit == corrections.z_bit && x_bit == corrections.x_bit => {}
            other => return Err(Error::State(format!("unexpected payload {other:?}"))),
        }
    }
    let by_receiver = Actor::Party(receiver);
    if x_bit == 1 {
        session.pauli_x(by_receiver, target)?;
    }
    if z_bit == 1 {
        session.pauli_z(by_receiver, target)?;
    }
    Ok(corrections)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::session::{Party, PartyId, Role};
    use crate::quantum::{gates, state_fidelity, PauliString, Statevector};
    use crate::rng::{child_rng, seeded};

    fn session_with(source_state: &Statevector) -> Session {
        let n = source_state.n_qubits();
        let full = source_state.tensor(&Statevector::basis(2).unwrap()).unwrap();
        let prover: Vec<usize> = (0..=n).collect();
        Session::new(
            full,
            vec![Party::new(0, Role::Prover, prover), Party::new(1, Role::Verifier, [n + 1])],
            vec![(n, n + 1)],
            vec![(PartyId(0), PartyId(1))],
        )
        .unwrap()
    }

    #[test]
    fn teleports_plus_state() {
        let plus = Statevector::basis(1).unwrap().apply_unitary(&gates::hadamard(), &[0]).unwrap();
        for seed in 0..16 {
            let mut s = session_with(&plus);
            qst_teleport(&mut s, 0, 1, 2, &mut seeded(seed)).unwrap();
            let x = PauliString::single(3, 2, Pauli::X).unwrap();
            assert!((x.expectation(s.state()).unwrap() - 1.0).abs() < 1e-12);
            s.audit().unwrap();
        }
    }

    #[test]
    fn rejects_overlapping_sites() {
        let mut s = session_with(&Statevector::basis(1).unwrap());
        assert!(matches!(qst_teleport(&mut s, 0, 0, 2, &mut seeded(0)), Err(Error::Argument(_))));
    }

    #[test]
    fn corrections_are_uniform() {
        let plus = Statevector::from_real(&[0.8, 0.6]).unwrap();
        let n = 10_000u64;
        let mut counts = [0u64; 4];
        for shot in 0..n {
            let mut s = session_with(&plus);
            let c = qst_teleport(&mut s, 0, 1, 2, &mut child_rng(99, shot)).unwrap();
            counts[(2 * c.z_bit + c.x_bit) as usize] += 1;
        }
        let sd = (n as f64 * 0.25 * 0.75).sqrt();
        for c in counts {
            assert!((c as f64 - n as f64 / 4.0).abs() < 4.0 * sd, "{counts:?}");
        }
    }

    #[test]
    fn teleports_half_of_an_entangled_pair() {
        // Source site 1 of a two-qubit entangled state moves to site 3;
        // reduced state of (0, 3) equals the original (0, 1) state.
        let g = Statevector::from_real(&[0.38268343236508984, 0.0, 0.0, -0.9238795325112867]).unwrap();
        let full = g.tensor(&Statevector::basis(2).unwrap()).unwrap();
        let mut s = Session::new(
            full,
            vec![Party::new(0, Role::Prover, [0, 1, 2]), Party::new(1, Role::Verifier, [3])],
            vec![(2, 3)],
            vec![(PartyId(0), PartyId(1))],
        )
        .unwrap();
        let c = qst_teleport(&mut s, 1, 2, 3, &mut seeded(5)).unwrap();
        // Sites 1 and 2 are now |z_bit>|x_bit>; compare with g on (0, 3).
        let expected = {
            let mut amps = vec![crate::quantum::C64::new(0.0, 0.0); 16];
            for (idx, a) in g.amplitudes().iter().enumerate() {
                let (b0, b1) = (idx >> 1, idx & 1);
                let full_idx = (b0 << 3) | ((c.z_bit as usize) << 2) | ((c.x_bit as usize) << 1) | b1;
                amps[full_idx] = *a;
            }
            Statevector::from_amplitudes(amps).unwrap()
        };
        assert!((state_fidelity(s.state(), &expected).unwrap() - 1.0).abs() < 1e-12);
    }
}
