use super::{CMatrix, C64, MAX_QUBITS, UNITARY_TOL};
use crate::error::{Error, Result};

/// A normalized pure state on `n_qubits` qubits.
///
/// Amplitude index bit `n_qubits - 1 - q` holds the value of site `q`, so
/// `|q0 q1 ... >` reads as a binary number with site 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<C64>,
}

fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits < 1 {
        return Err(Error::Construction("a register needs at least one qubit".into()));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Capacity(format!(
            "{n_qubits} qubits exceeds the dense limit of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl Statevector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize) -> Result<Self> {
        Self::computational(n_qubits, 0)
    }

    /// The computational basis state with amplitude index `index`.
    pub fn computational(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Argument(format!("basis index {index} out of range for dimension {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state from raw amplitudes, normalizing them.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::Construction(format!("amplitude count {dim} is not a power of two >= 2")));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_qubits(n_qubits)?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-150 {
            return Err(Error::Construction("amplitudes have zero or non-finite norm".into()));
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self { n_qubits, amps })
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Wraps amplitudes that are already normalized. Crate-internal fast path.
    pub(crate) fn from_normalized(n_qubits: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bit mask of `site` inside an amplitude index.
    pub fn site_mask(&self, site: usize) -> usize {
        1usize << (self.n_qubits - 1 - site)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Statevector) -> Result<C64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Argument(format!(
                "dimension mismatch: {} vs {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `self ⊗ other`, with the sites of `self` first.
    pub fn tensor(&self, other: &Statevector) -> Result<Statevector> {
        check_qubits(self.n_qubits + other.n_qubits)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self::from_normalized(self.n_qubits + other.n_qubits, amps))
    }

    /// Fixes the global phase so the first non-negligible amplitude is real positive.
    pub fn canonical_phase(mut self) -> Self {
        if let Some(first) = self.amps.iter().find(|a| a.norm() > 1e-12).copied() {
            let phase = first.conj() / first.norm();
            for a in &mut self.amps {
                *a *= phase;
            }
        }
        self
    }

    /// Applies `matrix` to `targets`, returning the new state.
    ///
    /// `targets[0]` is the most significant qubit of the matrix index. The
    /// matrix must be unitary within 1e-10.
    pub fn apply_unitary(&self, matrix: &CMatrix, targets: &[usize]) -> Result<Statevector> {
        let mut out = self.clone();
        out.apply_unitary_mut(matrix, targets)?;
        Ok(out)
    }

    pub fn apply_unitary_mut(&mut self, matrix: &CMatrix, targets: &[usize]) -> Result<()> {
        self.check_targets(targets)?;
        let sub = 1usize << targets.len();
        if matrix.nrows() != sub || matrix.ncols() != sub {
            return Err(Error::Argument(format!(
                "matrix is {}x{}, expected {sub}x{sub} for {} targets",
                matrix.nrows(),
                matrix.ncols(),
                targets.len()
            )));
        }
        let residual = super::unitarity_residual(matrix);
        if residual > UNITARY_TOL {
            return Err(Error::Argument(format!("matrix is not unitary (residual {residual:.3e})")));
        }
        self.apply_matrix_unchecked(matrix, targets);
        Ok(())
    }

    pub(crate) fn check_targets(&self, targets: &[usize]) -> Result<()> {
        if targets.is_empty() {
            return Err(Error::Argument("no target qubits".into()));
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n_qubits {
                return Err(Error::Argument(format!("target {t} out of range for {} qubits", self.n_qubits)));
            }
            if targets[..i].contains(&t) {
                return Err(Error::Argument(format!("duplicate target {t}")));
            }
        }
        Ok(())
    }

    pub(crate) fn apply_matrix_unchecked(&mut self, matrix: &CMatrix, targets: &[usize]) {
        if targets.len() == 1 {
            let m = [[matrix[(0, 0)], matrix[(0, 1)]], [matrix[(1, 0)], matrix[(1, 1)]]];
            self.apply_single(&m, targets[0]);
            return;
        }
        let masks: Vec<usize> = targets.iter().map(|&t| self.site_mask(t)).collect();
        let all: usize = masks.iter().sum();
        let sub = 1usize << targets.len();
        let offsets: Vec<usize> = (0..sub)
            .map(|j| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| j & (1 << (targets.len() - 1 - bit)) != 0)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect();
        let mut gathered = vec![C64::new(0.0, 0.0); sub];
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (g, off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amps[base + off];
            }
            for (row, off) in offsets.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (col, g) in gathered.iter().enumerate() {
                    acc += matrix[(row, col)] * g;
                }
                self.amps[base + off] = acc;
            }
        }
    }

    /// Single-qubit fast path. `m` must be unitary.
    pub(crate) fn apply_single(&mut self, m: &[[C64; 2]; 2], site: usize) {
        let mask = self.site_mask(site);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | mask];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// CNOT fast path.
    pub(crate) fn apply_cnot(&mut self, control: usize, target: usize) {
        let cm = self.site_mask(control);
        let tm = self.site_mask(target);
        for i in 0..self.amps.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amps.swap(i, i | tm);
            }
        }
    }
}

/// `|<a|b>|^2`.
pub fn state_fidelity(a: &Statevector, b: &Statevector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}
