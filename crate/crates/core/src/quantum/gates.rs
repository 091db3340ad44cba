//! Standard gate matrices.

use super::{CMatrix, C64};
use std::f64::consts::FRAC_1_SQRT_2;

const O: C64 = C64::new(0.0, 0.0);
const L: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);
const S: C64 = C64::new(FRAC_1_SQRT_2, 0.0);
const M: C64 = C64::new(-1.0, 0.0);

pub(crate) const X2: [[C64; 2]; 2] = [[O, L], [L, O]];
pub(crate) const Z2: [[C64; 2]; 2] = [[L, O], [O, M]];
pub(crate) const H2: [[C64; 2]; 2] = [[S, S], [S, C64::new(-FRAC_1_SQRT_2, 0.0)]];

fn from_2x2(m: [[C64; 2]; 2]) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
}

pub fn x() -> CMatrix {
    from_2x2(X2)
}

pub fn y() -> CMatrix {
    from_2x2([[O, -I], [I, O]])
}

pub fn z() -> CMatrix {
    from_2x2(Z2)
}

pub fn hadamard() -> CMatrix {
    from_2x2(H2)
}

/// CNOT with the control on the first target.
pub fn cnot() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = L;
    m[(1, 1)] = L;
    m[(2, 3)] = L;
    m[(3, 2)] = L;
    m
}
