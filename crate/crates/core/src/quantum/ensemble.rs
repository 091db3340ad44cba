use super::{PauliObservable, Statevector, EXACT_TOL};
use crate::error::{Error, Result};

/// A mixed state held as a probability-weighted list of pure branches.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedEnsemble {
    branches: Vec<(f64, Statevector)>,
}

impl MixedEnsemble {
    pub fn new(branches: Vec<(f64, Statevector)>) -> Result<Self> {
        let Some((_, first)) = branches.first() else {
            return Err(Error::Construction("an ensemble needs at least one branch".into()));
        };
        let n = first.n_qubits();
        if branches.iter().any(|(_, s)| s.n_qubits() != n) {
            return Err(Error::Construction("ensemble branches act on different registers".into()));
        }
        if branches.iter().any(|(w, _)| !(*w >= 0.0)) {
            return Err(Error::Construction("ensemble weights must be non-negative".into()));
        }
        let total: f64 = branches.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > EXACT_TOL {
            return Err(Error::Construction(format!("ensemble weights sum to {total}, not 1")));
        }
        Ok(Self { branches })
    }

    pub fn pure(state: Statevector) -> Self {
        Self { branches: vec![(1.0, state)] }
    }

    pub fn branches(&self) -> &[(f64, Statevector)] {
        &self.branches
    }

    pub fn n_qubits(&self) -> usize {
        self.branches[0].1.n_qubits()
    }

    pub fn total_weight(&self) -> f64 {
        self.branches.iter().map(|(w, _)| w).sum()
    }

    /// `sum_b w_b <psi_b|O|psi_b>`.
    pub fn expectation(&self, obs: &PauliObservable) -> Result<f64> {
        let mut acc = 0.0;
        for (w, s) in &self.branches {
            acc += w * obs.expectation(s)?;
        }
        Ok(acc)
    }
}

/// Free-function form of [`MixedEnsemble::expectation`].
pub fn ensemble_expectation(ens: &MixedEnsemble, obs: &PauliObservable) -> Result<f64> {
    ens.expectation(obs)
}
