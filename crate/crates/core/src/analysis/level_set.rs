//! Parameter sets that reveal the same public data.
//!
//! Both the optimal angle and the post-round Pauli expectations of the
//! minimal model depend on `(h, k)` only through `t = k / h`:
//!
//! ```text
//! sin 2theta*(t) = t / sqrt((1 + 2t^2)^2 + t^2)
//! ```
//!
//! which rises from 0 to its maximum 1/3 at `t = 1/sqrt(2)` and falls back
//! to 0. Every achievable angle below the maximum has two preimages in `t`,
//! and each `t` stands for the whole ray `(c t, c)`, `c > 0`.

use crate::error::{Error, Result};
use crate::hamiltonian::MinimalModel;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, TAU};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPair {
    pub k: f64,
    pub h: f64,
}

impl ParamPair {
    pub fn model(&self) -> Result<MinimalModel> {
        MinimalModel::new(self.h, self.k)
    }
}

const SIN_MAX: f64 = 1.0 / 3.0;

fn sin_2theta(t: f64) -> f64 {
    let a = 1.0 + 2.0 * t * t;
    t / (a * a + t * t).sqrt()
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Scale factors `1, 2, 3, ...` applied to the roots in turn.
fn along_rays(roots: &[f64], n_samples: usize) -> Vec<ParamPair> {
    (0..n_samples)
        .map(|i| {
            let t = roots[i % roots.len()];
            let c = (i / roots.len() + 1) as f64;
            ParamPair { k: c * t, h: c }
        })
        .collect()
}

/// `n_samples` distinct `(k, h)` pairs whose optimal angle is `theta_target`.
///
/// Pairs alternate between the two ratio roots, larger ratio first, each
/// at scales `h = 1, 2, ...`. At the maximal angle the roots coincide.
pub fn theta_level_set(theta_target: f64, n_samples: usize) -> Result<Vec<ParamPair>> {
    if n_samples == 0 {
        return Err(Error::Argument("n_samples must be positive".into()));
    }
    if !(theta_target > 0.0 && theta_target < FRAC_PI_4) {
        return Err(Error::EmptySet(format!("no model has optimal angle {theta_target}")));
    }
    let target = (2.0 * theta_target).sin();
    if target > SIN_MAX + 1e-12 {
        return Err(Error::EmptySet(format!("sin 2theta = {target} exceeds the maximum 1/3")));
    }
    let f = |t: f64| sin_2theta(t) - target;
    let roots = if target >= SIN_MAX - 1e-15 {
        vec![FRAC_1_SQRT_2]
    } else {
        vec![bisect(FRAC_1_SQRT_2, 1.0 / target, f), bisect(0.0, FRAC_1_SQRT_2, f)]
    };
    Ok(along_rays(&roots, n_samples))
}

/// `(<X_A X_B>, <Z_B>)` after a faithful round at angle `theta`.
///
/// With `tan phi = k / h` these are `(-sin a, -cos a)` for `a = phi + 2 theta`.
pub fn post_round_paulis(model: &MinimalModel, theta: f64) -> (f64, f64) {
    let (h, k, r) = (model.h(), model.k(), model.scale());
    let (s, c) = (2.0 * theta).sin_cos();
    ((-h * s - k * c) / r, (k * s - h * c) / r)
}

/// `n_samples` distinct `(k, h)` pairs whose post-round `<X_A X_B>` and
/// `<Z_B>` at angle `theta` match the targets within 1e-6.
pub fn observable_level_set(v_target: f64, z_target: f64, theta: f64, n_samples: usize) -> Result<Vec<ParamPair>> {
    if n_samples == 0 {
        return Err(Error::Argument("n_samples must be positive".into()));
    }
    if ![v_target, z_target, theta].iter().all(|x| x.is_finite()) {
        return Err(Error::Argument("targets and angle must be finite".into()));
    }
    let radius = v_target.hypot(z_target);
    if (radius - 1.0).abs() > 1e-6 {
        return Err(Error::EmptySet(format!("targets lie off the unit circle (radius {radius})")));
    }
    let a = (-v_target).atan2(-z_target);
    let phi = (a - 2.0 * theta).rem_euclid(TAU);
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::EmptySet(format!("targets need k/h = tan({phi}), which is not positive")));
    }
    let pairs = along_rays(&[phi.tan()], n_samples);
    for p in &pairs {
        let (x, z) = post_round_paulis(&p.model()?, theta);
        if (x - v_target).abs() > 1e-6 || (z - z_target).abs() > 1e-6 {
            return Err(Error::EmptySet(format!("no pair within 1e-6 of ({v_target}, {z_target})")));
        }
    }
    Ok(pairs)
}
