//! `H = sum_i k_i Z_i + sum_j h_j X_j X_{j+1}` on an open chain, solved by
//! dense diagonalization.

use crate::error::{Error, Result};
use crate::quantum::{Pauli, PauliObservable, PauliString, Statevector, C64};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

/// Largest chain handed to the dense eigensolver (4096 x 4096).
pub const MAX_CHAIN_SITES: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralChainModel {
    z_coeffs: Vec<f64>,
    xx_coeffs: Vec<f64>,
}

impl GeneralChainModel {
    pub fn new(z_coeffs: Vec<f64>, xx_coeffs: Vec<f64>) -> Result<Self> {
        let n = z_coeffs.len();
        if n < 2 {
            return Err(Error::Construction(format!("a chain needs at least 2 sites, got {n}")));
        }
        if xx_coeffs.len() != n - 1 {
            return Err(Error::Construction(format!(
                "{n} sites need {} XX couplings, got {}",
                n - 1,
                xx_coeffs.len()
            )));
        }
        if z_coeffs.iter().chain(&xx_coeffs).any(|c| !c.is_finite()) {
            return Err(Error::Construction("chain coefficients must be finite".into()));
        }
        Ok(Self { z_coeffs, xx_coeffs })
    }

    pub fn n_sites(&self) -> usize {
        self.z_coeffs.len()
    }

    pub fn z_coeffs(&self) -> &[f64] {
        &self.z_coeffs
    }

    pub fn xx_coeffs(&self) -> &[f64] {
        &self.xx_coeffs
    }

    /// One observable per coefficient: the `Z` terms, then the `XX` bonds.
    pub fn local_terms(&self) -> Result<Vec<PauliObservable>> {
        let n = self.n_sites();
        let mut out = Vec::with_capacity(2 * n - 1);
        for (i, &k) in self.z_coeffs.iter().enumerate() {
            out.push(PauliObservable::new(n).with_term(k, PauliString::single(n, i, Pauli::Z)?)?);
        }
        for (j, &h) in self.xx_coeffs.iter().enumerate() {
            let s = PauliString::from_sites(n, &[(j, Pauli::X), (j + 1, Pauli::X)])?;
            out.push(PauliObservable::new(n).with_term(h, s)?);
        }
        Ok(out)
    }

    pub fn observable(&self) -> Result<PauliObservable> {
        PauliObservable::sum(&self.local_terms()?)
    }

    /// The real symmetric Hamiltonian matrix in the computational basis.
    pub fn dense_matrix(&self) -> DMatrix<f64> {
        let n = self.n_sites();
        let dim = 1usize << n;
        let mask = |site: usize| 1usize << (n - 1 - site);
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for b in 0..dim {
            let diag: f64 = self
                .z_coeffs
                .iter()
                .enumerate()
                .map(|(i, k)| if b & mask(i) == 0 { *k } else { -*k })
                .sum();
            m[(b, b)] = diag;
            for (j, h) in self.xx_coeffs.iter().enumerate() {
                m[(b ^ mask(j) ^ mask(j + 1), b)] += h;
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundState {
    pub state: Statevector,
    pub energy: f64,
}

/// Dense ground state of a chain model.
///
/// A degenerate ground space is resolved by projecting the lowest-index
/// computational basis state with non-negligible weight in the space onto
/// it; the result's first nonzero amplitude is made real positive.
pub fn exact_ground_state(model: &GeneralChainModel) -> Result<GroundState> {
    let n = model.n_sites();
    if n > MAX_CHAIN_SITES {
        return Err(Error::Capacity(format!(
            "{n} sites exceeds the dense diagonalization limit of {MAX_CHAIN_SITES}"
        )));
    }
    let eig = SymmetricEigen::new(model.dense_matrix());
    let e0 = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = eig.eigenvalues.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let ground: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| (eig.eigenvalues[i] - e0).abs() <= 1e-10 * scale)
        .collect();

    let dim = 1usize << n;
    let weight = |b: usize| ground.iter().map(|&c| eig.eigenvectors[(b, c)].powi(2)).sum::<f64>();
    let pivot = (0..dim)
        .find(|&b| weight(b) > 1e-8)
        .or_else(|| (0..dim).max_by(|&a, &b| weight(a).total_cmp(&weight(b))))
        .expect("ground space is non-empty");

    let mut amps = vec![0.0; dim];
    for &c in &ground {
        let overlap = eig.eigenvectors[(pivot, c)];
        for (b, a) in amps.iter_mut().enumerate() {
            *a += overlap * eig.eigenvectors[(b, c)];
        }
    }
    let state = Statevector::from_amplitudes(amps.into_iter().map(|a| C64::new(a, 0.0)).collect())?.canonical_phase();
    Ok(GroundState { state, energy: e0 })
}
