//! The minimal QET model on two qubits,
//!
//! ```text
//! H   = H_A + H_B + V
//! H_A = h Z_0 + h^2 / sqrt(h^2 + k^2)
//! H_B = h Z_1 + h^2 / sqrt(h^2 + k^2)
//! V   = 2k X_0 X_1 + 2k^2 / sqrt(h^2 + k^2)
//! ```
//!
//! Site 0 is the witness qubit the verifier measures in the X basis, site 1
//! is the qubit the prover rotates. The energy the verifier reads out is
//! `H_B + V`; its `H_B` part is the column labelled `H_1` in the usual
//! tabulation of conditional energies.

use super::theta::ThetaSolution;
use crate::error::{Error, Result};
use crate::quantum::{Pauli, PauliObservable, PauliString, Statevector, C64};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalModel {
    h: f64,
    k: f64,
}

impl MinimalModel {
    pub fn new(h: f64, k: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) || !(k.is_finite() && k > 0.0) {
            return Err(Error::Construction(format!("minimal model needs h > 0 and k > 0, got h={h}, k={k}")));
        }
        Ok(Self { h, k })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `sqrt(h^2 + k^2)`.
    pub fn scale(&self) -> f64 {
        self.h.hypot(self.k)
    }

    /// Constant shift of each field term.
    pub fn field_constant(&self) -> f64 {
        self.h * self.h / self.scale()
    }

    /// Constant shift of the coupling term.
    pub fn coupling_constant(&self) -> f64 {
        2.0 * self.k * self.k / self.scale()
    }
}

/// The three local terms of the minimal model placed on a register.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalTerms {
    /// `h Z_A + const` on the witness site.
    pub field_a: PauliObservable,
    /// `h Z_B + const` on the receiver site.
    pub field_b: PauliObservable,
    /// `2k X_A X_B + const`.
    pub coupling: PauliObservable,
}

impl MinimalTerms {
    /// Places the terms on sites `site_a`, `site_b` of an `n_qubits` register.
    pub fn on_sites(model: &MinimalModel, n_qubits: usize, site_a: usize, site_b: usize) -> Result<Self> {
        if site_a == site_b {
            return Err(Error::Argument("witness and receiver sites must differ".into()));
        }
        let field_a = PauliObservable::new(n_qubits)
            .with_term(model.h, PauliString::single(n_qubits, site_a, Pauli::Z)?)?
            .with_constant(model.field_constant());
        let field_b = PauliObservable::new(n_qubits)
            .with_term(model.h, PauliString::single(n_qubits, site_b, Pauli::Z)?)?
            .with_constant(model.field_constant());
        let coupling = PauliObservable::new(n_qubits)
            .with_term(2.0 * model.k, PauliString::from_sites(n_qubits, &[(site_a, Pauli::X), (site_b, Pauli::X)])?)?
            .with_constant(model.coupling_constant());
        Ok(Self { field_a, field_b, coupling })
    }

    pub fn as_list(&self) -> Vec<PauliObservable> {
        vec![self.field_a.clone(), self.field_b.clone(), self.coupling.clone()]
    }

    pub fn total(&self) -> PauliObservable {
        PauliObservable::sum([&self.field_a, &self.field_b, &self.coupling]).expect("terms share a register")
    }

    /// `H_B + V`, the energy the verifier measures.
    pub fn receiver_energy(&self) -> PauliObservable {
        PauliObservable::sum([&self.field_b, &self.coupling]).expect("terms share a register")
    }
}

/// The minimal-model terms on the two-qubit register `(A, B) = (0, 1)`.
pub fn minimal_terms(model: &MinimalModel) -> MinimalTerms {
    MinimalTerms::on_sites(model, 2, 0, 1).expect("sites 0 and 1 are valid")
}

/// `|g> = a|00> - b|11>` with `a = sqrt((1 - h/r)/2)`, `b = sqrt((1 + h/r)/2)`.
pub fn minimal_ground_state(model: &MinimalModel) -> Statevector {
    let ratio = model.h / model.scale();
    let a = ((1.0 - ratio) / 2.0).max(0.0).sqrt();
    let b = ((1.0 + ratio) / 2.0).sqrt();
    let zero = C64::new(0.0, 0.0);
    Statevector::from_normalized(2, vec![C64::new(a, 0.0), zero, zero, C64::new(-b, 0.0)])
}

/// Closed-form optimal angle with `sigma_A = X_0`, `sigma_B = Y_1`.
///
/// `xi = 2(h^2 + 2k^2)/r` and `eta = 2hk/r`, so that
/// `cos 2theta = (h^2+2k^2)/D`, `sin 2theta = hk/D` with
/// `D = sqrt((h^2+2k^2)^2 + (hk)^2)`.
pub fn minimal_theta(model: &MinimalModel) -> ThetaSolution {
    let (h, k) = (model.h, model.k);
    let r = model.scale();
    ThetaSolution::from_xi_eta(2.0 * (h * h + 2.0 * k * k) / r, 2.0 * h * k / r)
        .expect("eta > 0 for h, k > 0")
}
