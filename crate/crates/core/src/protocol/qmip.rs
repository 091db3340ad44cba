//! Several provers, one verifier.
//!
//! Every prover holds its own minimal-model pair on a disjoint set of
//! global sites and runs the single-prover circuit on a private register.
//! Shots proceed in lockstep: all witnesses are teleported, the verifier
//! measures all of them and sends each prover its `mu`, then all provers
//! rotate and teleport back, and finally the verifier reads out every
//! local energy. Each prover is accepted or rejected on its own estimate.

use super::qip::{finish, QipRound, QipSetup};
use super::transcript::{Decision, ProtocolTranscript, ShotRecord};
use crate::error::{Error, Result};
use crate::rng::{child_rng, derive_seed, SimRng};
use rayon::prelude::*;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq)]
pub struct QmipProver {
    /// Global sites of the prover's local Hamiltonian.
    pub sites: Vec<usize>,
    pub setup: QipSetup,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QmipResult {
    pub transcripts: Vec<ProtocolTranscript>,
}

impl QmipResult {
    pub fn decisions(&self) -> Vec<Decision> {
        self.transcripts.iter().map(|t| t.decision).collect()
    }
}

/// Seed of prover `index`; its transcript equals a single-prover run with it.
pub fn prover_seed(seed: u64, index: usize) -> u64 {
    derive_seed(seed, index as u64)
}

fn validate(provers: &[QmipProver]) -> Result<()> {
    if provers.len() < 2 {
        return Err(Error::Configuration(format!("need at least 2 provers, got {}", provers.len())));
    }
    let mut seen = BTreeSet::new();
    for (i, p) in provers.iter().enumerate() {
        if p.sites.len() != 2 {
            return Err(Error::Configuration(format!("prover {i} must declare 2 sites, got {}", p.sites.len())));
        }
        for &s in &p.sites {
            if !seen.insert(s) {
                return Err(Error::Configuration(format!("site {s} is shared by two provers")));
            }
        }
    }
    Ok(())
}

fn lockstep_shot(provers: &[QmipProver], shot: u64, rngs: &mut [SimRng]) -> Result<Vec<ShotRecord>> {
    let mut rounds = provers
        .iter()
        .map(|p| QipRound::new(&p.setup.prover.state))
        .collect::<Result<Vec<_>>>()?;
    for (r, rng) in rounds.iter_mut().zip(rngs.iter_mut()) {
        r.send_witness(rng)?;
    }
    let mut mus = Vec::with_capacity(rounds.len());
    for (r, rng) in rounds.iter_mut().zip(rngs.iter_mut()) {
        mus.push(r.verifier_measure(rng)?);
    }
    let mut nus = Vec::with_capacity(rounds.len());
    for ((r, p), rng) in rounds.iter_mut().zip(provers).zip(rngs.iter_mut()) {
        nus.push(r.prover_respond(&p.setup.prover, rng)?);
    }
    let mut out = Vec::with_capacity(rounds.len());
    for (i, ((r, p), rng)) in rounds.iter_mut().zip(provers).zip(rngs.iter_mut()).enumerate() {
        let (h1_sample, v_sample) = r.readout(&p.setup.model, rng)?;
        out.push(ShotRecord { shot, mu: mus[i], nu: nus[i], h1_sample, v_sample });
    }
    Ok(out)
}

pub fn run_qmip(provers: &[QmipProver], n_shot: u64, seed: u64) -> Result<QmipResult> {
    validate(provers)?;
    if n_shot == 0 {
        return Err(Error::Argument("n_shot must be positive".into()));
    }
    let seeds: Vec<u64> = (0..provers.len()).map(|i| prover_seed(seed, i)).collect();
    let shots = (0..n_shot)
        .into_par_iter()
        .map(|shot| {
            let mut rngs: Vec<SimRng> = seeds.iter().map(|&s| child_rng(s, shot)).collect();
            lockstep_shot(provers, shot, &mut rngs)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut per_prover: Vec<Vec<ShotRecord>> = vec![Vec::with_capacity(shots.len()); provers.len()];
    for shot in shots {
        for (i, rec) in shot.into_iter().enumerate() {
            per_prover[i].push(rec);
        }
    }
    let transcripts = per_prover
        .into_iter()
        .zip(provers)
        .map(|(rounds, p)| finish(rounds, p.setup.rule))
        .collect();
    Ok(QmipResult { transcripts })
}
