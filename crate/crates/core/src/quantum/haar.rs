//! Haar-distributed unitaries: a complex Ginibre matrix, QR-decomposed,
//! with the phases of `diag(R)` pushed into `Q`.

use super::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::rng::SimRng;
use rand::Rng;
use rand_distr::StandardNormal;

pub fn haar_random_unitary(dim: usize, rng: &mut SimRng) -> Result<CMatrix> {
    if dim < 2 {
        return Err(Error::Argument(format!("Haar sampling needs dim >= 2, got {dim}")));
    }
    if dim > 1 << 20 {
        return Err(Error::Capacity(format!("dimension {dim} exceeds 2^20")));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = ginibre.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Largest entry of `|U^dagger U - 1|`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let prod = m.adjoint() * m;
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}
