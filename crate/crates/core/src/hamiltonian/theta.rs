//! Optimal conditional-rotation angle from ground-state correlations.
//!
//! With `U_B(mu) = cos(theta) - i mu sin(theta) sigma_B` the receiver's mean
//! energy after the round is
//!
//! ```text
//! E_B(theta) = xi (1 - cos 2theta) / 2 - eta sin(2theta) / 2
//! xi  = <g| sigma_B H sigma_B |g>
//! eta = <g| sigma_A i[H, sigma_B] |g>
//! ```
//!
//! minimized at `cos 2theta = xi / sqrt(xi^2 + eta^2)`,
//! `sin 2theta = eta / sqrt(xi^2 + eta^2)`, where it equals
//! `(xi - sqrt(xi^2 + eta^2)) / 2`.

use crate::error::{Error, Result};
use crate::quantum::{PauliObservable, PauliString, Statevector, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSolution {
    /// Rotation angle in `[0, 2pi)`.
    pub theta: f64,
    pub xi: f64,
    pub eta: f64,
}

impl ThetaSolution {
    pub fn from_xi_eta(xi: f64, eta: f64) -> Result<Self> {
        if !(xi.is_finite() && eta.is_finite()) {
            return Err(Error::DegenerateModel("non-finite correlations".into()));
        }
        if eta.abs() <= 1e-12 * xi.abs().max(1.0) {
            return Err(Error::DegenerateModel(format!(
                "eta = {eta:e}: no negative receiver energy is available"
            )));
        }
        let theta = (0.5 * eta.atan2(xi)).rem_euclid(TAU);
        Ok(Self { theta, xi, eta })
    }

    pub fn cos_2theta(&self) -> f64 {
        (2.0 * self.theta).cos()
    }

    pub fn sin_2theta(&self) -> f64 {
        (2.0 * self.theta).sin()
    }

    /// `(xi - sqrt(xi^2 + eta^2)) / 2`, the minimal receiver energy.
    pub fn receiver_energy(&self) -> f64 {
        0.5 * (self.xi - self.xi.hypot(self.eta))
    }
}

fn single_site(s: &PauliString, name: &str) -> Result<usize> {
    s.single_site()
        .map(|(site, _)| site)
        .ok_or_else(|| Error::Argument(format!("{name} = {s} must act on exactly one site")))
}

/// Computes `xi`, `eta` and the optimal angle by exact algebra on `g`.
pub fn general_theta(
    terms: &[PauliObservable],
    sigma_a: &PauliString,
    sigma_b: &PauliString,
    g: &Statevector,
) -> Result<ThetaSolution> {
    let h = PauliObservable::sum(terms)?;
    let n = g.n_qubits();
    if h.n_qubits() != n || sigma_a.n_qubits() != n || sigma_b.n_qubits() != n {
        return Err(Error::Argument("Hamiltonian, operators and state act on different registers".into()));
    }
    if single_site(sigma_a, "sigma_A")? == single_site(sigma_b, "sigma_B")? {
        return Err(Error::Argument("sigma_A and sigma_B must act on distinct sites".into()));
    }
    if (g.norm_sqr() - 1.0).abs() > 1e-10 {
        return Err(Error::State("ground state is not normalized".into()));
    }

    let amps = g.amplitudes();
    let sb_g = sigma_b.apply_raw(amps);
    let h_sb_g = h.apply_raw(&sb_g);
    let xi: f64 = sb_g.iter().zip(&h_sb_g).map(|(a, b)| a.conj() * b).sum::<C64>().re;

    let sb_h_g = sigma_b.apply_raw(&h.apply_raw(amps));
    let i = C64::new(0.0, 1.0);
    let sigma_dot_g: Vec<C64> = h_sb_g.iter().zip(&sb_h_g).map(|(a, b)| i * (a - b)).collect();
    let eta = sigma_a.expectation_raw_pair(amps, &sigma_dot_g).re;

    ThetaSolution::from_xi_eta(xi, eta)
}

/// Shifts each term by `-<g|O|g>` so every term has zero ground-state mean.
pub fn normalize_constants(terms: &[PauliObservable], g: &Statevector) -> Result<Vec<PauliObservable>> {
    terms
        .iter()
        .map(|t| Ok(t.shifted(-t.expectation(g)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{minimal_ground_state, minimal_terms, minimal_theta, MinimalModel};
    use crate::quantum::Pauli;

    fn xa_yb() -> (PauliString, PauliString) {
        (PauliString::single(2, 0, Pauli::X).unwrap(), PauliString::single(2, 1, Pauli::Y).unwrap())
    }

    #[test]
    fn matches_closed_form_on_minimal_model() {
        let m = MinimalModel::new(1.0, 1.0).unwrap();
        let (sa, sb) = xa_yb();
        let general = general_theta(&minimal_terms(&m).as_list(), &sa, &sb, &minimal_ground_state(&m)).unwrap();
        let closed = minimal_theta(&m);
        assert!((general.theta - closed.theta).abs() < 1e-9);
        assert!((general.xi - closed.xi).abs() < 1e-12);
        assert!((general.eta - closed.eta).abs() < 1e-12);
    }

    #[test]
    fn receiver_energy_matches_closed_form() {
        // (A - D) / r with A = h^2 + 2k^2, D = sqrt(A^2 + (hk)^2)
        let m = MinimalModel::new(1.0, 1.0).unwrap();
        let expect = (3.0 - 10f64.sqrt()) / 2f64.sqrt();
        assert!((minimal_theta(&m).receiver_energy() - expect).abs() < 1e-14);
    }

    #[test]
    fn product_state_is_degenerate() {
        let m = MinimalModel::new(1.0, 1.0).unwrap();
        let (sa, sb) = xa_yb();
        // |0+>: <X0 X1> = <Z1> = 0, so eta vanishes.
        let product = Statevector::from_real(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        let err = general_theta(&minimal_terms(&m).as_list(), &sa, &sb, &product).unwrap_err();
        assert!(matches!(err, Error::DegenerateModel(_)));
    }

    #[test]
    fn scaling_the_hamiltonian_keeps_theta() {
        let m = MinimalModel::new(0.7, 1.3).unwrap();
        let g = minimal_ground_state(&m);
        let (sa, sb) = xa_yb();
        let base = general_theta(&minimal_terms(&m).as_list(), &sa, &sb, &g).unwrap();
        let c = 3.5;
        let scaled: Vec<_> = minimal_terms(&m)
            .as_list()
            .iter()
            .map(|t| {
                let mut o = PauliObservable::new(2).with_constant(t.constant() * c);
                for (coef, s) in t.terms() {
                    o = o.with_term(coef * c, s.clone()).unwrap();
                }
                o
            })
            .collect();
        let s = general_theta(&scaled, &sa, &sb, &g).unwrap();
        assert!((s.xi - c * base.xi).abs() < 1e-10);
        assert!((s.eta - c * base.eta).abs() < 1e-10);
        assert!((s.theta - base.theta).abs() < 1e-10);
    }

    #[test]
    fn rejects_same_site_operators() {
        let m = MinimalModel::new(1.0, 1.0).unwrap();
        let sa = PauliString::single(2, 1, Pauli::X).unwrap();
        let sb = PauliString::single(2, 1, Pauli::Y).unwrap();
        assert!(general_theta(&minimal_terms(&m).as_list(), &sa, &sb, &minimal_ground_state(&m)).is_err());
    }

    #[test]
    fn normalization_recovers_minimal_constants() {
        let m = MinimalModel::new(1.3, 0.4).unwrap();
        let g = minimal_ground_state(&m);
        let shaped = minimal_terms(&m);
        let bare: Vec<_> = shaped.as_list().iter().map(|t| t.shifted(-t.constant())).collect();
        let fixed = normalize_constants(&bare, &g).unwrap();
        for (f, s) in fixed.iter().zip(shaped.as_list()) {
            assert!((f.constant() - s.constant()).abs() < 1e-12);
            assert!(f.expectation(&g).unwrap().abs() < 1e-12);
        }
        let again = normalize_constants(&fixed, &g).unwrap();
        for (a, f) in again.iter().zip(&fixed) {
            assert!((a.constant() - f.constant()).abs() < 1e-12);
        }
        assert!(PauliObservable::sum(&fixed).unwrap().expectation(&g).unwrap().abs() < 1e-12);
    }
}
