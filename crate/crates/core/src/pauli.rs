//! Pauli operators and the sixteen-element product basis.
//!
//! Any 4x4 operator decomposes as M = Σ h[α][β] σ_α ⊗ σ_β over
//! α, β ∈ {0, x, y, z}. The normalization used here is
//! h[α][β] = Tr[M (σ_α ⊗ σ_β)] / 4, so composition is coefficient-times-
//! basis-element with no extra prefactor. Density matrices then carry
//! h[0][0] = 1/4 and correlation functions are 4 h.

use std::fmt;

use crate::error::Result;
use crate::matrix::{kron, C64, Mat2, Mat4};

/// Index into the single-qubit Pauli basis, ordered 0 < x < y < z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliIndex {
    I,
    X,
    Y,
    Z,
}

pub const PAULI_INDICES: [PauliIndex; 4] = [PauliIndex::I, PauliIndex::X, PauliIndex::Y, PauliIndex::Z];

impl PauliIndex {
    pub fn as_usize(self) -> usize {
        match self {
            PauliIndex::I => 0,
            PauliIndex::X => 1,
            PauliIndex::Y => 2,
            PauliIndex::Z => 3,
        }
    }

    pub fn from_usize(i: usize) -> Option<PauliIndex> {
        PAULI_INDICES.get(i).copied()
    }

    /// One-character name used in family labels: '0', 'x', 'y', 'z'.
    pub fn as_char(self) -> char {
        match self {
            PauliIndex::I => '0',
            PauliIndex::X => 'x',
            PauliIndex::Y => 'y',
            PauliIndex::Z => 'z',
        }
    }

    pub fn from_char(c: char) -> Option<PauliIndex> {
        match c {
            '0' => Some(PauliIndex::I),
            'x' => Some(PauliIndex::X),
            'y' => Some(PauliIndex::Y),
            'z' => Some(PauliIndex::Z),
            _ => None,
        }
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The unit and Pauli spin operators in the standard representation.
pub fn pauli(alpha: PauliIndex) -> Mat2 {
    let o = C64::new(1.0, 0.0);
    let z = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match alpha {
        PauliIndex::I => Mat2::from_rows([[o, z], [z, o]]),
        PauliIndex::X => Mat2::from_rows([[z, o], [o, z]]),
        PauliIndex::Y => Mat2::from_rows([[z, -i], [i, z]]),
        PauliIndex::Z => Mat2::from_rows([[o, z], [z, -o]]),
    }
}

/// σ_α ⊗ σ_β.
pub fn pauli_pair(alpha: PauliIndex, beta: PauliIndex) -> Mat4 {
    kron(&pauli(alpha), &pauli(beta))
}

/// Real coefficients of a Hermitian 4x4 matrix over the product Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliVector {
    h: [[f64; 4]; 4],
}

impl PauliVector {
    pub fn zero() -> Self {
        Self { h: [[0.0; 4]; 4] }
    }

    pub fn get(&self, alpha: PauliIndex, beta: PauliIndex) -> f64 {
        self.h[alpha.as_usize()][beta.as_usize()]
    }

    pub fn set(&mut self, alpha: PauliIndex, beta: PauliIndex, value: f64) {
        self.h[alpha.as_usize()][beta.as_usize()] = value;
    }

    /// All sixteen (α, β, coefficient) entries in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (PauliIndex, PauliIndex, f64)> + '_ {
        PAULI_INDICES.iter().flat_map(move |&a| {
            PAULI_INDICES
                .iter()
                .map(move |&b| (a, b, self.get(a, b)))
        })
    }

    /// Entries with |coefficient| above `floor`.
    pub fn nonzero(&self, floor: f64) -> Vec<(PauliIndex, PauliIndex, f64)> {
        self.entries().filter(|&(_, _, v)| v.abs() > floor).collect()
    }
}

/// Projects a Hermitian matrix onto the product Pauli basis.
///
/// Rejects non-Hermitian input; for Hermitian input all coefficients are
/// real, so only the real part of the trace is stored.
pub fn bloch_decompose(m: &Mat4) -> Result<PauliVector> {
    m.require_hermitian()?;
    let mut h = PauliVector::zero();
    for &a in &PAULI_INDICES {
        for &b in &PAULI_INDICES {
            let t = (*m * pauli_pair(a, b)).trace();
            h.set(a, b, t.re * 0.25);
        }
    }
    Ok(h)
}

/// Σ h[α][β] σ_α ⊗ σ_β; Hermitian by construction for real coefficients.
pub fn bloch_compose(h: &PauliVector) -> Mat4 {
    let mut m = Mat4::zero();
    for (a, b, v) in h.entries() {
        if v != 0.0 {
            m = m + pauli_pair(a, b).scale(v);
        }
    }
    m
}
