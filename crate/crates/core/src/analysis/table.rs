//! Receiver-field and coupling energies for faithful (`C`) and unfaithful
//! (`I`) rounds, exact or estimated from simulated shots.

use crate::error::Result;
use crate::hamiltonian::{minimal_theta, MinimalModel};
use crate::protocol::{run_qip, ProverStrategy, QipSetup};
use crate::quantum::Outcome;
use crate::rng::derive_seed;
use serde::{Deserialize, Serialize};

use super::formulas::analytic_conditional;

/// The `(h, k)` points of the reference table.
pub const TABLE_MODELS: [(f64, f64); 4] = [(1.0, 0.2), (1.0, 0.5), (1.0, 1.0), (1.5, 1.0)];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub h: f64,
    pub k: f64,
    /// Shots per estimate; 0 for exact values.
    pub n_shot: u64,
    pub h1_c: f64,
    pub h1_i: f64,
    pub v_c: f64,
    pub v_i: f64,
}

/// Exact values at the optimal angle.
pub fn analytic_row(model: &MinimalModel) -> TableRow {
    let theta = minimal_theta(model).theta;
    let mut row = TableRow { h: model.h(), k: model.k(), n_shot: 0, h1_c: 0.0, h1_i: 0.0, v_c: 0.0, v_i: 0.0 };
    for mu in Outcome::BOTH {
        let c = analytic_conditional(model, theta, mu, mu);
        let i = analytic_conditional(model, theta, mu, mu.flipped());
        row.h1_c += c.h1;
        row.v_c += c.v;
        row.h1_i += i.h1;
        row.v_i += i.v;
    }
    row
}

/// Sample means from two full protocol runs of `n_shot` shots, one with a
/// faithful and one with an unfaithful rotation.
pub fn simulated_row(model: &MinimalModel, n_shot: u64, seed: u64) -> Result<TableRow> {
    let faithful = QipSetup::honest(*model);
    let mut unfaithful = faithful.clone();
    unfaithful.prover = ProverStrategy { faithful: false, ..faithful.prover.clone() };
    let c = run_qip(&faithful, n_shot, derive_seed(seed, 0))?;
    let i = run_qip(&unfaithful, n_shot, derive_seed(seed, 1))?;
    Ok(TableRow {
        h: model.h(),
        k: model.k(),
        n_shot,
        h1_c: c.h1().mean,
        h1_i: i.h1().mean,
        v_c: c.v().mean,
        v_i: i.v().mean,
    })
}
