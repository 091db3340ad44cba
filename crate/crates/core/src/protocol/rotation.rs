use crate::error::{Error, Result};
use crate::quantum::{CMatrix, Outcome, Pauli, PauliString, Statevector, C64};

/// `U_B(nu, theta) = cos(theta) 1 - i nu sin(theta) sigma_B`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalRotation {
    pub theta: f64,
    pub sign: Outcome,
    axis: PauliString,
}

impl ConditionalRotation {
    pub fn new(theta: f64, sign: Outcome, axis: PauliString) -> Result<Self> {
        if axis.single_site().is_none() {
            return Err(Error::Argument(format!("rotation axis {axis} must act on one site")));
        }
        if !theta.is_finite() {
            return Err(Error::Argument("rotation angle must be finite".into()));
        }
        Ok(Self { theta, sign, axis })
    }

    /// Rotation generated by `Y` on `site`, the minimal-model choice.
    pub fn about_y(theta: f64, sign: Outcome, n_qubits: usize, site: usize) -> Result<Self> {
        Self::new(theta, sign, PauliString::single(n_qubits, site, Pauli::Y)?)
    }

    pub fn axis(&self) -> &PauliString {
        &self.axis
    }

    pub fn site(&self) -> usize {
        self.axis.single_site().expect("checked in new").0
    }

    pub(crate) fn matrix_2x2(&self) -> [[C64; 2]; 2] {
        let sigma = self.axis.single_site().expect("checked in new").1.matrix();
        let c = C64::new(self.theta.cos(), 0.0);
        let s = C64::new(0.0, -self.sign.sign() * self.theta.sin());
        let e = |i: usize, j: usize| {
            let id = if i == j { c } else { C64::new(0.0, 0.0) };
            id + s * sigma[(i, j)]
        };
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// The single-site 2x2 matrix.
    pub fn matrix(&self) -> CMatrix {
        let m = self.matrix_2x2();
        CMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
    }

    pub fn apply(&self, state: &Statevector) -> Result<Statevector> {
        if state.n_qubits() != self.axis.n_qubits() {
            return Err(Error::Argument("rotation and state act on different registers".into()));
        }
        let mut out = state.clone();
        out.apply_single(&self.matrix_2x2(), self.site());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::unitarity_residual;

    #[test]
    fn matrix_form_and_unitarity() {
        for &(theta, sign) in &[(0.3, Outcome::Plus), (1.9, Outcome::Minus), (0.0, Outcome::Plus)] {
            let r = ConditionalRotation::about_y(theta, sign, 1, 0).unwrap();
            let m = r.matrix();
            let expect = CMatrix::identity(2, 2) * C64::new(theta.cos(), 0.0)
                - Pauli::Y.matrix() * C64::new(0.0, sign.sign() * theta.sin());
            assert!((m.clone() - expect).norm() < 1e-15);
            assert!(unitarity_residual(&m) < 1e-12);
        }
    }

    #[test]
    fn zero_angle_is_identity() {
        let s = Statevector::from_real(&[0.6, 0.8]).unwrap();
        let r = ConditionalRotation::about_y(0.0, Outcome::Minus, 1, 0).unwrap();
        assert_eq!(r.apply(&s).unwrap(), s);
    }
}
