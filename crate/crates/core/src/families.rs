//! The fifteen symmetry families of two-qubit operators.
//!
//! Each family is the commutant of one involution U_{αβ} = σ_α ⊗ σ_β with
//! (α, β) ≠ (0, 0): the set of matrices commuting with it, which is closed
//! under sums and products. A member is determined by seven real
//! coefficients over the family's support — the seven Pauli pairs whose
//! product operator commutes with U_{αβ}. Supports are always derived by
//! the commutator test, never from a hard-coded table.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Mat4;
use crate::pauli::{bloch_compose, pauli_pair, PauliIndex, PauliVector, PAULI_INDICES};

/// Frobenius-relative residual below which a matrix counts as commuting.
pub const COMMUTANT_TOL: f64 = 1e-10;

/// Names one of the fifteen U_{αβ} families; (0, 0) is excluded because
/// everything commutes with the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyId {
    first: PauliIndex,
    second: PauliIndex,
}

impl FamilyId {
    pub fn new(first: PauliIndex, second: PauliIndex) -> Result<FamilyId> {
        if first == PauliIndex::I && second == PauliIndex::I {
            return Err(Error::BadFamilyName("00".into()));
        }
        Ok(FamilyId { first, second })
    }

    pub fn first(&self) -> PauliIndex {
        self.first
    }

    pub fn second(&self) -> PauliIndex {
        self.second
    }

    /// Both indices Cartesian (x, y, z): the nine families that reduce to
    /// the X form by local unitaries.
    pub fn is_inner(&self) -> bool {
        self.first != PauliIndex::I && self.second != PauliIndex::I
    }

    /// All fifteen families in lexicographic order (0 < x < y < z).
    pub fn all() -> Vec<FamilyId> {
        let mut v = Vec::with_capacity(15);
        for &a in &PAULI_INDICES {
            for &b in &PAULI_INDICES {
                if let Ok(f) = FamilyId::new(a, b) {
                    v.push(f);
                }
            }
        }
        v
    }

    /// The nine inner families, lexicographic.
    pub fn inner() -> Vec<FamilyId> {
        Self::all().into_iter().filter(FamilyId::is_inner).collect()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first.as_char(), self.second.as_char())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyId> {
        let mut chars = s.chars();
        let (a, b, rest) = (chars.next(), chars.next(), chars.next());
        match (a, b, rest) {
            (Some(a), Some(b), None) => {
                let first = PauliIndex::from_char(a);
                let second = PauliIndex::from_char(b);
                match (first, second) {
                    (Some(first), Some(second)) => FamilyId::new(first, second)
                        .map_err(|_| Error::BadFamilyName(s.into())),
                    _ => Err(Error::BadFamilyName(s.into())),
                }
            }
            _ => Err(Error::BadFamilyName(s.into())),
        }
    }
}

/// The family's symmetry operator σ_α ⊗ σ_β: unitary, Hermitian, squares
/// to the identity.
pub fn u_operator(f: FamilyId) -> Mat4 {
    pauli_pair(f.first, f.second)
}

/// The seven Pauli pairs spanning a family, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pairs: [(PauliIndex, PauliIndex); 7],
}

impl Support {
    pub fn pairs(&self) -> &[(PauliIndex, PauliIndex); 7] {
        &self.pairs
    }

    pub fn contains(&self, pair: (PauliIndex, PauliIndex)) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn position(&self, pair: (PauliIndex, PauliIndex)) -> Option<usize> {
        self.pairs.iter().position(|&p| p == pair)
    }
}

/// Computes the support of a family by the explicit commutator test: all
/// (α, β) ≠ (0, 0) whose product operator commutes with U_f. Always seven
/// elements.
pub fn support(f: FamilyId) -> Support {
    let u = u_operator(f);
    let mut pairs = Vec::with_capacity(7);
    for &a in &PAULI_INDICES {
        for &b in &PAULI_INDICES {
            if a == PauliIndex::I && b == PauliIndex::I {
                continue;
            }
            let op = pauli_pair(a, b);
            if op.commutation_residual(&u) <= COMMUTANT_TOL {
                pairs.push((a, b));
            }
        }
    }
    assert_eq!(pairs.len(), 7, "family {f} support is not a septet");
    Support {
        pairs: pairs.try_into().unwrap(),
    }
}

/// All families whose symmetry operator commutes with `m`, at the
/// Frobenius-relative residual `COMMUTANT_TOL`.
pub fn commuting_families(m: &Mat4) -> Vec<FamilyId> {
    FamilyId::all()
        .into_iter()
        .filter(|&f| m.commutation_residual(&u_operator(f)) <= COMMUTANT_TOL)
        .collect()
}

/// Membership test for a single family.
pub fn in_family(m: &Mat4, f: FamilyId) -> bool {
    m.commutation_residual(&u_operator(f)) <= COMMUTANT_TOL
}

/// The fifteen physical parameters of the general two-spin Hamiltonian:
/// local fields on both qubits, the three Heisenberg exchange couplings,
/// and the antisymmetric (D) and symmetric (Γ) cross-exchange vectors.
/// All in common energy units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CouplingSet {
    /// Field on the first qubit (x, y, z).
    pub b1: [f64; 3],
    /// Field on the second qubit.
    pub b2: [f64; 3],
    /// Heisenberg exchange (J_x, J_y, J_z).
    pub j: [f64; 3],
    /// Antisymmetric cross-exchange vector (D_x, D_y, D_z).
    pub d: [f64; 3],
    /// Symmetric traceless cross-exchange (Γ_x, Γ_y, Γ_z).
    pub gamma: [f64; 3],
}

/// The six cross couplings J_{αβ} (α ≠ β) generated by the D and Γ vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CrossCouplings {
    pub yz: f64,
    pub zy: f64,
    pub zx: f64,
    pub xz: f64,
    pub xy: f64,
    pub yx: f64,
}

/// Cross couplings from the cross-exchange vectors:
/// J_yz = Γ_x + D_x, J_zy = Γ_x − D_x, and cyclically.
pub fn cross_couplings(d: [f64; 3], gamma: [f64; 3]) -> CrossCouplings {
    CrossCouplings {
        yz: gamma[0] + d[0],
        zy: gamma[0] - d[0],
        zx: gamma[1] + d[1],
        xz: gamma[1] - d[1],
        xy: gamma[2] + d[2],
        yx: gamma[2] - d[2],
    }
}

/// Inverse of `cross_couplings`: recovers (D, Γ) as half-differences and
/// half-sums of the cross couplings.
pub fn dm_ksea(cross: &CrossCouplings) -> ([f64; 3], [f64; 3]) {
    let d = [
        0.5 * (cross.yz - cross.zy),
        0.5 * (cross.zx - cross.xz),
        0.5 * (cross.xy - cross.yx),
    ];
    let gamma = [
        0.5 * (cross.yz + cross.zy),
        0.5 * (cross.zx + cross.xz),
        0.5 * (cross.xy + cross.yx),
    ];
    (d, gamma)
}

const CARTESIAN: [PauliIndex; 3] = [PauliIndex::X, PauliIndex::Y, PauliIndex::Z];

impl CouplingSet {
    pub fn zero() -> CouplingSet {
        CouplingSet::default()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.b1
            .iter()
            .chain(&self.b2)
            .chain(&self.j)
            .chain(&self.d)
            .chain(&self.gamma)
            .all(|v| v.abs() <= tol)
    }

    /// The Bloch coefficients of the full Hamiltonian: single-qubit fields,
    /// diagonal exchange, and the six cross couplings.
    pub fn bloch(&self) -> PauliVector {
        let mut h = PauliVector::zero();
        for (k, &alpha) in CARTESIAN.iter().enumerate() {
            h.set(alpha, PauliIndex::I, self.b1[k]);
            h.set(PauliIndex::I, alpha, self.b2[k]);
            h.set(alpha, alpha, self.j[k]);
        }
        let cross = cross_couplings(self.d, self.gamma);
        h.set(PauliIndex::Y, PauliIndex::Z, cross.yz);
        h.set(PauliIndex::Z, PauliIndex::Y, cross.zy);
        h.set(PauliIndex::Z, PauliIndex::X, cross.zx);
        h.set(PauliIndex::X, PauliIndex::Z, cross.xz);
        h.set(PauliIndex::X, PauliIndex::Y, cross.xy);
        h.set(PauliIndex::Y, PauliIndex::X, cross.yx);
        h
    }

    /// Rebuilds a coupling set from Bloch coefficients, ignoring the
    /// identity component. Inverse of `bloch`.
    pub(crate) fn from_bloch(h: &PauliVector) -> CouplingSet {
        let mut c = CouplingSet::zero();
        for (k, &alpha) in CARTESIAN.iter().enumerate() {
            c.b1[k] = h.get(alpha, PauliIndex::I);
            c.b2[k] = h.get(PauliIndex::I, alpha);
            c.j[k] = h.get(alpha, alpha);
        }
        let cross = CrossCouplings {
            yz: h.get(PauliIndex::Y, PauliIndex::Z),
            zy: h.get(PauliIndex::Z, PauliIndex::Y),
            zx: h.get(PauliIndex::Z, PauliIndex::X),
            xz: h.get(PauliIndex::X, PauliIndex::Z),
            xy: h.get(PauliIndex::X, PauliIndex::Y),
            yx: h.get(PauliIndex::Y, PauliIndex::X),
        };
        let (d, gamma) = dm_ksea(&cross);
        c.d = d;
        c.gamma = gamma;
        c
    }
}

/// The 15-term expansion of the general Hamiltonian. Hermitian, traceless.
pub fn full_hamiltonian(c: &CouplingSet) -> Mat4 {
    bloch_compose(&c.bloch())
}

/// Seven real coefficients keyed by a family's support, in support order.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    family: FamilyId,
    values: [f64; 7],
}

impl FamilyParams {
    /// Values in the lexicographic support order of `family`.
    pub fn new(family: FamilyId, values: [f64; 7]) -> FamilyParams {
        FamilyParams { family, values }
    }

    /// Builds from (pair, value) entries; the key set must be exactly the
    /// support of `family`.
    pub fn from_pairs(
        family: FamilyId,
        entries: &[((PauliIndex, PauliIndex), f64)],
    ) -> Result<FamilyParams> {
        let sup = support(family);
        if entries.len() != 7 {
            return Err(Error::SupportMismatch { family });
        }
        let mut values = [f64::NAN; 7];
        for &(pair, v) in entries {
            match sup.position(pair) {
                Some(i) if values[i].is_nan() => values[i] = v,
                _ => return Err(Error::SupportMismatch { family }),
            }
        }
        Ok(FamilyParams { family, values })
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn values(&self) -> &[f64; 7] {
        &self.values
    }

    pub fn get(&self, pair: (PauliIndex, PauliIndex)) -> Option<f64> {
        support(self.family).position(pair).map(|i| self.values[i])
    }

    /// (pair, value) entries in support order.
    pub fn entries(&self) -> Vec<((PauliIndex, PauliIndex), f64)> {
        support(self.family)
            .pairs()
            .iter()
            .copied()
            .zip(self.values.iter().copied())
            .collect()
    }

    pub fn to_bloch(&self) -> PauliVector {
        let mut h = PauliVector::zero();
        for (pair, v) in self.entries() {
            h.set(pair.0, pair.1, v);
        }
        h
    }
}

/// Hermitian traceless member of family `f` with the given support
/// coefficients; commutes with `u_operator(f)` by construction.
pub fn build_hamiltonian(f: FamilyId, p: &FamilyParams) -> Result<Mat4> {
    if p.family() != f {
        return Err(Error::SupportMismatch { family: f });
    }
    Ok(bloch_compose(&p.to_bloch()))
}

/// Splits the full Hamiltonian of `c` into the part supported on family
/// `f` and the dropped remainder, returned as the couplings it came from.
/// The residual is zero exactly when `c` lies in family `f`.
pub fn physical_projection(c: &CouplingSet, f: FamilyId) -> (FamilyParams, CouplingSet) {
    let h = c.bloch();
    let sup = support(f);
    let mut kept = [0.0; 7];
    let mut rest = PauliVector::zero();
    for (a, b, v) in h.entries() {
        match sup.position((a, b)) {
            Some(i) => kept[i] = v,
            None => rest.set(a, b, v),
        }
    }
    (FamilyParams::new(f, kept), CouplingSet::from_bloch(&rest))
}
