//! Exact post-round energies of the minimal model.
//!
//! With `r = sqrt(h^2 + k^2)`, `s = sin 2theta`, `c = cos 2theta`, the
//! receiver field and the coupling after a faithful round average to
//!
//! ```text
//! <H1> = (h / r) [k s + h (1 - c)]
//! <V>  = (2k / r) [-h s + k (1 - c)]
//! ```
//!
//! and each `(mu, nu)` branch contributes, weighted by its probability,
//!
//! ```text
//! <H1(mu, nu)> = (h / 2r) [k mu nu s + h (1 - c)]
//! <V(mu, nu)>  = (k / r) [-h mu nu s + k (1 - c)]
//! ```

use crate::hamiltonian::{minimal_theta, MinimalModel};
use crate::quantum::Outcome;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub h: f64,
    pub k: f64,
    pub theta: f64,
    /// Offset of `theta` from the optimal angle.
    pub delta: f64,
    pub h1: f64,
    pub v: f64,
    pub eb: f64,
}

impl EnergyReport {
    fn new(model: &MinimalModel, theta: f64, h1: f64, v: f64) -> Self {
        Self {
            h: model.h(),
            k: model.k(),
            theta,
            delta: theta - minimal_theta(model).theta,
            h1,
            v,
            eb: h1 + v,
        }
    }
}

/// Ensemble-averaged energies after a faithful round at angle `theta`.
pub fn analytic_h1_v(model: &MinimalModel, theta: f64) -> EnergyReport {
    let (h, k, r) = (model.h(), model.k(), model.scale());
    let (s, c) = (2.0 * theta).sin_cos();
    let h1 = h / r * (k * s + h * (1.0 - c));
    let v = 2.0 * k / r * (-h * s + k * (1.0 - c));
    EnergyReport::new(model, theta, h1, v)
}

/// Probability-weighted contribution of the branch `(mu, nu)`.
pub fn analytic_conditional(model: &MinimalModel, theta: f64, mu: Outcome, nu: Outcome) -> EnergyReport {
    let (h, k, r) = (model.h(), model.k(), model.scale());
    let (s, c) = (2.0 * theta).sin_cos();
    let mn = mu.sign() * nu.sign();
    let h1 = h / (2.0 * r) * (k * mn * s + h * (1.0 - c));
    let v = k / r * (-h * mn * s + k * (1.0 - c));
    EnergyReport::new(model, theta, h1, v)
}

/// Faithful-round energies at `theta* + delta` for each offset.
pub fn delta_sensitivity(model: &MinimalModel, deltas: &[f64]) -> Vec<EnergyReport> {
    let theta = minimal_theta(model).theta;
    deltas
        .iter()
        .map(|&d| {
            let mut rep = analytic_h1_v(model, theta + d);
            rep.delta = d;
            rep
        })
        .collect()
}

/// `n` offsets evenly spaced over `[lo, hi]`, both ends included.
pub fn delta_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}
