//! Shared-register bookkeeping for LOCC protocols.
//!
//! The simulator keeps one joint statevector for all parties, but each
//! site has exactly one owner and every operation names the acting party.
//! Operations on sites the actor does not own fail with [`Error::Locc`].
//! Bell pairs for teleportation are the one exception: the entanglement
//! source may act on the two sites of a declared link, and nothing else.

use super::rotation::ConditionalRotation;
use crate::error::{Error, Result};
use crate::quantum::gates::{H2, X2, Z2};
use crate::quantum::{projective_measure, Outcome, Pauli, PauliString, Statevector, C64};
use crate::rng::SimRng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartyId(pub u32);

impl fmt::Display for PartyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "party#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Prover,
    Verifier,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Party {
    pub id: PartyId,
    pub role: Role,
    pub sites: BTreeSet<usize>,
}

impl Party {
    pub fn new(id: u32, role: Role, sites: impl IntoIterator<Item = usize>) -> Self {
        Self { id: PartyId(id), role, sites: sites.into_iter().collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Actor {
    Party(PartyId),
    EntanglementSource,
}

/// Which basis the receiver should read out, as announced by the prover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accept,
    Reject,
}

/// Classical payloads. Nothing here can carry amplitudes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Payload {
    Outcome(Outcome),
    /// Teleportation corrections: apply `Z^z_bit X^x_bit` on the target.
    Corrections { z_bit: u8, x_bit: u8 },
    BasisAnnouncement(Vec<Basis>),
    Verdict(Verdict),
}

impl Payload {
    /// Classical bits carried by the payload.
    pub fn bits(&self) -> usize {
        match self {
            Payload::Outcome(_) | Payload::Verdict(_) => 1,
            Payload::Corrections { .. } => 2,
            Payload::BasisAnnouncement(b) => b.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalMessage {
    pub sender: PartyId,
    pub payload: Payload,
}

/// One-directional in-process classical channel.
#[derive(Clone, Debug)]
pub struct Channel {
    pub from: PartyId,
    pub to: PartyId,
    queue: VecDeque<ClassicalMessage>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Event {
    Gate { actor: Actor, sites: Vec<usize>, label: String },
    Measure { actor: Actor, site: usize, basis: Pauli, outcome: Outcome },
    Message { to: PartyId, message: ClassicalMessage },
}

#[derive(Clone, Debug)]
pub struct Session {
    state: Statevector,
    parties: Vec<Party>,
    owner: Vec<Option<PartyId>>,
    links: Vec<(usize, usize)>,
    channels: Vec<Channel>,
    events: Vec<Event>,
}

impl Session {
    /// `links` are the Bell-pair site pairs; `channels` the allowed
    /// `(from, to)` classical directions.
    pub fn new(
        state: Statevector,
        parties: Vec<Party>,
        links: Vec<(usize, usize)>,
        channels: Vec<(PartyId, PartyId)>,
    ) -> Result<Self> {
        let n = state.n_qubits();
        let mut owner = vec![None; n];
        for p in &parties {
            for &s in &p.sites {
                if s >= n {
                    return Err(Error::Configuration(format!("{} declares site {s} outside the register", p.id)));
                }
                if let Some(prev) = owner[s] {
                    return Err(Error::Configuration(format!("site {s} claimed by {prev} and {}", p.id)));
                }
                owner[s] = Some(p.id);
            }
        }
        for &(a, b) in &links {
            if a == b || a >= n || b >= n {
                return Err(Error::Configuration(format!("invalid link ({a}, {b})")));
            }
        }
        let known = |id: PartyId| parties.iter().any(|p| p.id == id);
        let channels = channels
            .into_iter()
            .map(|(from, to)| {
                if !known(from) || !known(to) || from == to {
                    return Err(Error::Configuration(format!("invalid channel {from} -> {to}")));
                }
                Ok(Channel { from, to, queue: VecDeque::new() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { state, parties, owner, links, channels, events: Vec::new() })
    }

    pub fn state(&self) -> &Statevector {
        &self.state
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn owner_of(&self, site: usize) -> Option<PartyId> {
        self.owner.get(site).copied().flatten()
    }

    fn authorize(&self, actor: Actor, sites: &[usize]) -> Result<()> {
        for &s in sites {
            if s >= self.owner.len() {
                return Err(Error::Argument(format!("site {s} out of range")));
            }
        }
        match actor {
            Actor::Party(id) => {
                if let Some(&s) = sites.iter().find(|&&s| self.owner[s] != Some(id)) {
                    return Err(Error::Locc(format!("{id} acted on site {s} owned by {:?}", self.owner[s])));
                }
            }
            Actor::EntanglementSource => {
                let on_link = self
                    .links
                    .iter()
                    .any(|&(a, b)| sites.iter().all(|&s| s == a || s == b));
                if !on_link {
                    return Err(Error::Locc(format!("entanglement source acted on {sites:?} outside a link")));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn apply_single(&mut self, actor: Actor, m: &[[C64; 2]; 2], site: usize, label: &str) -> Result<()> {
        self.authorize(actor, &[site])?;
        self.state.apply_single(m, site);
        self.events.push(Event::Gate { actor, sites: vec![site], label: label.into() });
        Ok(())
    }

    pub fn hadamard(&mut self, actor: Actor, site: usize) -> Result<()> {
        self.apply_single(actor, &H2, site, "H")
    }

    pub fn pauli_x(&mut self, actor: Actor, site: usize) -> Result<()> {
        self.apply_single(actor, &X2, site, "X")
    }

    pub fn pauli_z(&mut self, actor: Actor, site: usize) -> Result<()> {
        self.apply_single(actor, &Z2, site, "Z")
    }

    pub fn rotate(&mut self, actor: Actor, rotation: &ConditionalRotation) -> Result<()> {
        let site = rotation.site();
        let m = rotation.matrix_2x2();
        self.apply_single(actor, &m, site, "U_B")
    }

    pub fn cnot(&mut self, actor: Actor, control: usize, target: usize) -> Result<()> {
        if control == target {
            return Err(Error::Argument("CNOT control equals target".into()));
        }
        self.authorize(actor, &[control, target])?;
        self.state.apply_cnot(control, target);
        self.events.push(Event::Gate { actor, sites: vec![control, target], label: "CNOT".into() });
        Ok(())
    }

    /// Projective single-site measurement of `basis` on `site`.
    pub fn measure(&mut self, actor: Actor, site: usize, basis: Pauli, rng: &mut SimRng) -> Result<Outcome> {
        if basis == Pauli::I {
            return Err(Error::Argument("cannot measure the identity".into()));
        }
        self.authorize(actor, &[site])?;
        let pauli = PauliString::single(self.state.n_qubits(), site, basis)?;
        let rec = projective_measure(&self.state, &pauli, rng)?;
        self.state = rec.post_state;
        self.events.push(Event::Measure { actor, site, basis, outcome: rec.outcome });
        Ok(rec.outcome)
    }

    pub fn send(&mut self, from: PartyId, to: PartyId, payload: Payload) -> Result<()> {
        let ch = self
            .channels
            .iter_mut()
            .find(|c| c.from == from && c.to == to)
            .ok_or_else(|| Error::Configuration(format!("no classical channel {from} -> {to}")))?;
        let message = ClassicalMessage { sender: from, payload };
        ch.queue.push_back(message.clone());
        self.events.push(Event::Message { to, message });
        Ok(())
    }

    pub fn recv(&mut self, to: PartyId, from: PartyId) -> Result<Payload> {
        let ch = self
            .channels
            .iter_mut()
            .find(|c| c.from == from && c.to == to)
            .ok_or_else(|| Error::Configuration(format!("no classical channel {from} -> {to}")))?;
        ch.queue
            .pop_front()
            .map(|m| m.payload)
            .ok_or_else(|| Error::State(format!("{to} expected a message from {from}")))
    }

    /// Re-checks every recorded operation against site ownership.
    pub fn audit(&self) -> Result<()> {
        for e in &self.events {
            match e {
                Event::Gate { actor, sites, .. } => self.authorize(*actor, sites)?,
                Event::Measure { actor, site, .. } => self.authorize(*actor, &[*site])?,
                Event::Message { .. } => {}
            }
        }
        Ok(())
    }

    /// Classical bits sent by `from`, per message kind filter.
    pub fn bits_sent(&self, from: PartyId) -> usize {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Message { message, .. } if message.sender == from => Some(message.payload.bits()),
                _ => None,
            })
            .sum()
    }

    pub fn messages_from(&self, from: PartyId) -> Vec<&ClassicalMessage> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Message { message, .. } if message.sender == from => Some(message),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn two_party() -> Session {
        let parties = vec![Party::new(0, Role::Prover, [0, 1]), Party::new(1, Role::Verifier, [2])];
        Session::new(
            Statevector::basis(3).unwrap(),
            parties,
            vec![(1, 2)],
            vec![(PartyId(0), PartyId(1))],
        )
        .unwrap()
    }

    #[test]
    fn parties_cannot_touch_foreign_sites() {
        let mut s = two_party();
        let prover = Actor::Party(PartyId(0));
        let verifier = Actor::Party(PartyId(1));
        assert!(s.hadamard(prover, 0).is_ok());
        assert!(matches!(s.hadamard(prover, 2), Err(Error::Locc(_))));
        assert!(matches!(s.cnot(verifier, 2, 1), Err(Error::Locc(_))));
        assert!(matches!(s.measure(verifier, 0, Pauli::Z, &mut seeded(0)), Err(Error::Locc(_))));
        assert!(s.cnot(Actor::EntanglementSource, 1, 2).is_ok());
        assert!(matches!(s.cnot(Actor::EntanglementSource, 0, 1), Err(Error::Locc(_))));
        s.audit().unwrap();
    }

    #[test]
    fn channels_are_directed() {
        let mut s = two_party();
        s.send(PartyId(0), PartyId(1), Payload::Outcome(Outcome::Plus)).unwrap();
        assert!(s.send(PartyId(1), PartyId(0), Payload::Outcome(Outcome::Plus)).is_err());
        assert_eq!(s.recv(PartyId(1), PartyId(0)).unwrap(), Payload::Outcome(Outcome::Plus));
        assert!(s.recv(PartyId(1), PartyId(0)).is_err());
        assert_eq!(s.bits_sent(PartyId(0)), 1);
    }

    #[test]
    fn overlapping_sites_rejected() {
        let parties = vec![Party::new(0, Role::Prover, [0, 1]), Party::new(1, Role::Verifier, [1])];
        let err = Session::new(Statevector::basis(2).unwrap(), parties, vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::Configuration(_)));
    }
}
