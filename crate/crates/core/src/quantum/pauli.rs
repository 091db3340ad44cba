use super::{CMatrix, Statevector, C64};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::I => CMatrix::identity(2, 2),
            Pauli::X => super::gates::x(),
            Pauli::Y => super::gates::y(),
            Pauli::Z => super::gates::z(),
        }
    }

    fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// One Pauli label per site.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    labels: Vec<Pauli>,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Construction("empty Pauli string".into()));
        }
        Ok(Self { labels })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self { labels: vec![Pauli::I; n_qubits.max(1)] }
    }

    /// `pauli` on `site`, identity elsewhere.
    pub fn single(n_qubits: usize, site: usize, pauli: Pauli) -> Result<Self> {
        if site >= n_qubits {
            return Err(Error::Argument(format!("site {site} out of range for {n_qubits} qubits")));
        }
        let mut labels = vec![Pauli::I; n_qubits];
        labels[site] = pauli;
        Ok(Self { labels })
    }

    /// Product of single-site operators; later entries on the same site are rejected.
    pub fn from_sites(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut labels = vec![Pauli::I; n_qubits];
        for &(site, p) in ops {
            if site >= n_qubits {
                return Err(Error::Argument(format!("site {site} out of range for {n_qubits} qubits")));
            }
            if labels[site] != Pauli::I {
                return Err(Error::Argument(format!("site {site} listed twice")));
            }
            labels[site] = p;
        }
        Ok(Self { labels })
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    /// Sites carrying a non-identity label.
    pub fn support(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != Pauli::I)
            .map(|(i, _)| i)
            .collect()
    }

    /// The single site this string acts on, if it acts on exactly one.
    pub fn single_site(&self) -> Option<(usize, Pauli)> {
        match self.support().as_slice() {
            [s] => Some((*s, self.labels[*s])),
            _ => None,
        }
    }

    fn masks(&self) -> (usize, usize, u32) {
        let n = self.labels.len();
        let mut flip = 0usize;
        let mut sign = 0usize;
        let mut n_y = 0u32;
        for (q, p) in self.labels.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match p {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                Pauli::Z => sign |= bit,
            }
        }
        (flip, sign, n_y)
    }

    /// `P v` for an arbitrary (not necessarily normalized) vector.
    pub(crate) fn apply_raw(&self, v: &[C64]) -> Vec<C64> {
        let (flip, sign, n_y) = self.masks();
        let base = C64::new(0.0, 1.0).powu(n_y);
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (b, amp) in v.iter().enumerate() {
            let phase = if (b & sign).count_ones() % 2 == 0 { base } else { -base };
            out[b ^ flip] = phase * amp;
        }
        out
    }

    /// `P |psi>`; Pauli strings are unitary so the result stays normalized.
    pub fn apply(&self, state: &Statevector) -> Result<Statevector> {
        self.check(state)?;
        Ok(Statevector::from_normalized(state.n_qubits(), self.apply_raw(state.amplitudes())))
    }

    /// `<psi|P|psi>`.
    pub fn expectation(&self, state: &Statevector) -> Result<f64> {
        self.check(state)?;
        Ok(self.expectation_raw(state.amplitudes()).re)
    }

    pub(crate) fn expectation_raw(&self, v: &[C64]) -> C64 {
        let (flip, sign, n_y) = self.masks();
        let base = C64::new(0.0, 1.0).powu(n_y);
        let mut acc = C64::new(0.0, 0.0);
        for (b, amp) in v.iter().enumerate() {
            let phase = if (b & sign).count_ones() % 2 == 0 { base } else { -base };
            acc += v[b ^ flip].conj() * phase * amp;
        }
        acc
    }

    /// `<bra|P|ket>`.
    pub(crate) fn expectation_raw_pair(&self, bra: &[C64], ket: &[C64]) -> C64 {
        bra.iter().zip(self.apply_raw(ket)).map(|(a, b)| a.conj() * b).sum()
    }

    fn check(&self, state: &Statevector) -> Result<()> {
        if self.n_qubits() != state.n_qubits() {
            return Err(Error::Argument(format!(
                "Pauli string on {} qubits applied to {} qubits",
                self.n_qubits(),
                state.n_qubits()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.labels {
            write!(f, "{}", p.label())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Construction(format!("unknown Pauli label {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels)
    }
}

/// `constant + sum_j coefficient_j * P_j` with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliObservable {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
    constant: f64,
}

impl PauliObservable {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new(), constant: 0.0 }
    }

    pub fn with_term(mut self, coefficient: f64, string: PauliString) -> Result<Self> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::Argument(format!(
                "term on {} qubits added to a {}-qubit observable",
                string.n_qubits(),
                self.n_qubits
            )));
        }
        self.terms.push((coefficient, string));
        Ok(self)
    }

    pub fn with_constant(mut self, constant: f64) -> Self {
        self.constant = constant;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Same terms with `delta` added to the constant.
    pub fn shifted(&self, delta: f64) -> Self {
        let mut out = self.clone();
        out.constant += delta;
        out
    }

    /// Sum of several observables on the same register.
    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a PauliObservable>) -> Result<Self> {
        let mut iter = parts.into_iter();
        let first = iter.next().ok_or_else(|| Error::Argument("empty observable sum".into()))?;
        let mut out = first.clone();
        for p in iter {
            if p.n_qubits != out.n_qubits {
                return Err(Error::Argument("observables act on different registers".into()));
            }
            out.terms.extend(p.terms.iter().cloned());
            out.constant += p.constant;
        }
        Ok(out)
    }

    /// `<psi|O|psi>`, including the constant.
    pub fn expectation(&self, state: &Statevector) -> Result<f64> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Argument(format!(
                "observable on {} qubits, state on {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        let amps = state.amplitudes();
        let mut acc = self.constant * state.norm_sqr();
        for (c, s) in &self.terms {
            acc += c * s.expectation_raw(amps).re;
        }
        Ok(acc)
    }

    /// `O v` for an arbitrary vector of matching length.
    pub(crate) fn apply_raw(&self, v: &[C64]) -> Vec<C64> {
        let mut out: Vec<C64> = v.iter().map(|a| a * self.constant).collect();
        for (c, s) in &self.terms {
            for (o, t) in out.iter_mut().zip(s.apply_raw(v)) {
                *o += t * *c;
            }
        }
        out
    }

    pub fn to_dense(&self) -> CMatrix {
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::identity(dim, dim) * C64::new(self.constant, 0.0);
        for col in 0..dim {
            let mut e = vec![C64::new(0.0, 0.0); dim];
            e[col] = C64::new(1.0, 0.0);
            for (c, s) in &self.terms {
                for (row, v) in s.apply_raw(&e).into_iter().enumerate() {
                    m[(row, col)] += v * *c;
                }
            }
        }
        m
    }
}
