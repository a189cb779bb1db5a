//! Local unitary gates and the structure transforms built on them.
//!
//! Three single-qubit gates are enough to connect the families: the
//! Hadamard H (diagonalizes σ_x), the Y-transform (diagonalizes σ_y), and
//! the identity. Products of those map any of the nine inner families onto
//! the X family and the six outer families onto a canonical pair. The
//! quasidiagonalizing transforms are built from eigenvectors of the U
//! operators and split every family member into two 2x2 blocks, which is
//! why all spectra here come out of 2x2 closed forms.

use crate::correlations::XParams;
use crate::eigen::eig2_closed;
use crate::error::{Error, Result};
use crate::families::{in_family, support, u_operator, FamilyId, FamilyParams};
use crate::matrix::{kron, C64, Mat2, Mat4};
use crate::pauli::{pauli, PauliIndex, PAULI_INDICES};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The Hadamard transform: real, symmetric, self-inverse.
/// H σ_x H = σ_z, H σ_y H = -σ_y, H σ_z H = σ_x.
pub fn hadamard() -> Mat2 {
    Mat2::from_real([[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
}

/// The Y-transform diagonalizing σ_y:
/// Y†σ_x Y = σ_y, Y†σ_y Y = σ_z, Y†σ_z Y = σ_x.
pub fn y_transform() -> Mat2 {
    let r = FRAC_1_SQRT_2;
    Mat2::from_rows([
        [C64::new(r, 0.0), C64::new(r, 0.0)],
        [C64::new(0.0, r), C64::new(0.0, -r)],
    ])
}

/// The alternative diagonalizer of σ_y:
/// Ỹ†σ_x Ỹ = σ_x, Ỹ†σ_y Ỹ = σ_z, Ỹ†σ_z Ỹ = -σ_y.
pub fn y_tilde() -> Mat2 {
    let r = FRAC_1_SQRT_2;
    Mat2::from_rows([
        [C64::new(r, 0.0), C64::new(0.0, r)],
        [C64::new(0.0, r), C64::new(r, 0.0)],
    ])
}

/// The Dirac exchange operator P = (1 + σ₁·σ₂)/2. Orthogonal, symmetric,
/// involutive; P (σ_α ⊗ σ_β) P = σ_β ⊗ σ_α.
pub fn swap_operator() -> Mat4 {
    Mat4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// A product gate U₁ ⊗ U₂ acting on qubits 1 and 2.
#[derive(Debug, Clone, Copy)]
pub struct LocalUnitary {
    gate1: Mat2,
    gate2: Mat2,
}

impl LocalUnitary {
    pub fn new(gate1: Mat2, gate2: Mat2) -> Result<LocalUnitary> {
        gate1.require_unitary()?;
        gate2.require_unitary()?;
        Ok(LocalUnitary { gate1, gate2 })
    }

    pub fn identity() -> LocalUnitary {
        LocalUnitary {
            gate1: Mat2::identity(),
            gate2: Mat2::identity(),
        }
    }

    pub fn gate1(&self) -> &Mat2 {
        &self.gate1
    }

    pub fn gate2(&self) -> &Mat2 {
        &self.gate2
    }

    pub fn adjoint(&self) -> LocalUnitary {
        LocalUnitary {
            gate1: self.gate1.adjoint(),
            gate2: self.gate2.adjoint(),
        }
    }

    /// The full 4x4 product U₁ ⊗ U₂.
    pub fn matrix(&self) -> Mat4 {
        kron(&self.gate1, &self.gate2)
    }
}

/// Conjugation M ↦ (U₁⊗U₂)† M (U₁⊗U₂). Preserves Hermiticity, spectrum
/// and trace.
pub fn conjugate(m: &Mat4, u: &LocalUnitary) -> Mat4 {
    let w = u.matrix();
    w.adjoint() * *m * w
}

fn canonical_gate(alpha: PauliIndex) -> Mat2 {
    match alpha {
        PauliIndex::I | PauliIndex::Z => Mat2::identity(),
        PauliIndex::X => hadamard(),
        PauliIndex::Y => y_transform(),
    }
}

fn canonical_gate_name(alpha: PauliIndex) -> &'static str {
    match alpha {
        PauliIndex::I | PauliIndex::Z => "σ0",
        PauliIndex::X => "H",
        PauliIndex::Y => "Y",
    }
}

/// The local unitary V₁ ⊗ V₂ (V₀ = V_z = 1, V_x = H, V_y = Y) whose
/// conjugation maps family f onto its canonical target: (z, z) for inner
/// families, (0, z) for (0, β), and (z, 0) for (α, 0).
pub fn canonicalizer(f: FamilyId) -> LocalUnitary {
    LocalUnitary {
        gate1: canonical_gate(f.first()),
        gate2: canonical_gate(f.second()),
    }
}

/// Human-readable gate label for the canonicalizer, e.g. "H⊗Y".
pub fn canonicalizer_description(f: FamilyId) -> String {
    format!(
        "{}⊗{}",
        canonical_gate_name(f.first()),
        canonical_gate_name(f.second())
    )
}

fn canonical_index(alpha: PauliIndex) -> PauliIndex {
    match alpha {
        PauliIndex::I => PauliIndex::I,
        _ => PauliIndex::Z,
    }
}

/// Where the canonicalizer conjugation sends family f.
pub fn canonical_target(f: FamilyId) -> FamilyId {
    FamilyId::new(canonical_index(f.first()), canonical_index(f.second()))
        .expect("canonical target is never 00")
}

/// How a single-qubit gate permutes the Pauli basis under g† σ_α g.
/// Returns the image index and its sign, or an error when the result is
/// not a signed Pauli operator.
fn pauli_action(gate: &Mat2, alpha: PauliIndex) -> Result<(PauliIndex, f64)> {
    let conj = gate.adjoint() * pauli(alpha) * *gate;
    let mut image = None;
    for &beta in &PAULI_INDICES {
        let coef = (conj * pauli(beta)).trace() * 0.5;
        if coef.norm() < 1e-12 {
            continue;
        }
        if coef.im.abs() > 1e-12 || (coef.re.abs() - 1.0).abs() > 1e-12 || image.is_some() {
            return Err(Error::NotPauliPermutation);
        }
        image = Some((beta, coef.re.signum()));
    }
    image.ok_or(Error::NotPauliPermutation)
}

/// Rewrites family parameters under conjugation by a Pauli-permuting local
/// unitary: the parameters of conjugate(build_hamiltonian(f, p), u), keyed
/// by the support of the image family.
pub fn remap_under(p: &FamilyParams, u: &LocalUnitary) -> Result<FamilyParams> {
    let f = p.family();
    let (f1, _) = pauli_action(&u.gate1, f.first())?;
    let (f2, _) = pauli_action(&u.gate2, f.second())?;
    let target = FamilyId::new(f1, f2).expect("images of a non-identity pair");

    let sup = support(target);
    let mut values = [0.0; 7];
    for ((a, b), w) in p.entries() {
        let (a2, s1) = pauli_action(&u.gate1, a)?;
        let (b2, s2) = pauli_action(&u.gate2, b)?;
        let slot = sup
            .position((a2, b2))
            .expect("image of a support element stays in the image support");
        values[slot] += s1 * s2 * w;
    }
    Ok(FamilyParams::new(target, values))
}

/// Parameters of the canonical-family Hamiltonian equivalent to (f, p)
/// under the canonicalizer conjugation.
pub fn remap_parameters(f: FamilyId, p: &FamilyParams) -> Result<FamilyParams> {
    if p.family() != f {
        return Err(Error::SupportMismatch { family: f });
    }
    remap_under(p, &canonicalizer(f))
}

fn pauli_eigvecs(alpha: PauliIndex) -> [[C64; 2]; 2] {
    let r = FRAC_1_SQRT_2;
    let c = C64::new;
    match alpha {
        // For σ_0 both computational vectors count as the "+1" pair.
        PauliIndex::I | PauliIndex::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
        PauliIndex::X => [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]],
        PauliIndex::Y => [[c(r, 0.0), c(0.0, r)], [c(r, 0.0), c(0.0, -r)]],
    }
}

/// A unitary whose columns are eigenvectors of u_operator(f), the +1
/// eigenspace first. The (x, x) and (y, y) cases use the fixed pair-basis
/// matrices R and S; other families use products of single-qubit Pauli
/// eigenvectors.
pub fn quasidiag_transform(f: FamilyId) -> Mat4 {
    use PauliIndex::{X, Y};
    let r = FRAC_1_SQRT_2;
    if (f.first(), f.second()) == (X, X) {
        return Mat4::from_real([
            [r, 0.0, 0.0, r],
            [0.0, r, r, 0.0],
            [0.0, r, -r, 0.0],
            [r, 0.0, 0.0, -r],
        ]);
    }
    if (f.first(), f.second()) == (Y, Y) {
        return Mat4::from_real([
            [-r, 0.0, 0.0, r],
            [0.0, r, r, 0.0],
            [0.0, r, -r, 0.0],
            [r, 0.0, 0.0, r],
        ]);
    }

    let va = pauli_eigvecs(f.first());
    let vb = pauli_eigvecs(f.second());
    // Column order by combined eigenvalue: ++ and -- land in the +1
    // eigenspace, +- and -+ in the -1 eigenspace. With a unit factor the
    // second-factor sign alone decides, so the pairing degenerates to the
    // natural product order.
    let cols: [(usize, usize); 4] = if f.first() == PauliIndex::I {
        [(0, 0), (1, 0), (0, 1), (1, 1)]
    } else if f.second() == PauliIndex::I {
        [(0, 0), (0, 1), (1, 0), (1, 1)]
    } else {
        [(0, 0), (1, 1), (0, 1), (1, 0)]
    };
    let mut t = Mat4::zero();
    for (col, &(ka, kb)) in cols.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                t[(2 * i + j, col)] = va[ka][i] * vb[kb][j];
            }
        }
    }
    t
}

/// The two 2x2 diagonal blocks a family member splits into.
#[derive(Debug, Clone, Copy)]
pub struct BlockPair {
    pub top: Mat2,
    pub bottom: Mat2,
}

impl BlockPair {
    /// Block-diagonal 4x4 matrix carrying the two blocks.
    pub fn reassemble(&self) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self.top[(i, j)];
                m[(2 + i, 2 + j)] = self.bottom[(i, j)];
            }
        }
        m
    }
}

/// Splits a matrix commuting with u_operator(f) into its two 2x2 blocks
/// via T† M T with T = quasidiag_transform(f). Rejects matrices outside
/// the family, reporting the commutation residual.
pub fn quasidiagonalize(m: &Mat4, f: FamilyId) -> Result<BlockPair> {
    let residual = m.commutation_residual(&u_operator(f));
    if residual > crate::families::COMMUTANT_TOL {
        return Err(Error::NotInFamily {
            family: f,
            residual,
        });
    }
    let t = quasidiag_transform(f);
    let b = t.adjoint() * *m * t;
    let mut top = Mat2::zero();
    let mut bottom = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            top[(i, j)] = b[(i, j)];
            bottom[(i, j)] = b[(2 + i, 2 + j)];
        }
    }
    Ok(BlockPair { top, bottom })
}

/// Eigenvalues of a Hermitian family member through the 2x2 closed forms,
/// merged and sorted ascending.
pub fn family_spectrum(m: &Mat4, f: FamilyId) -> Result<[f64; 4]> {
    m.require_hermitian()?;
    let blocks = quasidiagonalize(m, f)?;
    let (a, b) = eig2_closed(&blocks.top);
    let (c, d) = eig2_closed(&blocks.bottom);
    let mut eig = [a, b, c, d];
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eig)
}

/// Brings a density matrix of an inner family to the X form through the
/// canonicalizer, returning the X parameters and the unitary that does it.
/// Families with a unit index are rejected: they are not X-reducible.
pub fn reduce_to_x(rho: &Mat4, f: FamilyId) -> Result<(XParams, LocalUnitary)> {
    if !f.is_inner() {
        return Err(Error::NotXReducible(f));
    }
    if !in_family(rho, f) {
        return Err(Error::NotInFamily {
            family: f,
            residual: rho.commutation_residual(&u_operator(f)),
        });
    }
    let u = canonicalizer(f);
    let x = XParams::from_matrix(&conjugate(rho, &u))?;
    Ok((x, u))
}

/// Local phase gates diag(1, e^{iφ}) on both qubits that rotate u and v
/// real non-negative. Returns the normalized parameters and the gate; all
/// correlation measures are unchanged by it.
pub fn phase_normalize_x(x: &XParams) -> (XParams, LocalUnitary) {
    let arg_u = if x.u.norm() > 0.0 { x.u.arg() } else { 0.0 };
    let arg_v = if x.v.norm() > 0.0 { x.v.arg() } else { 0.0 };
    // Conjugation multiplies u by e^{i(φ1+φ2)} and v by e^{i(φ1-φ2)}.
    let phi1 = -0.5 * (arg_u + arg_v);
    let phi2 = -0.5 * (arg_u - arg_v);
    let gate = |phi: f64| {
        Mat2::from_rows([
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::from_polar(1.0, phi)],
        ])
    };
    let lu = LocalUnitary {
        gate1: gate(phi1),
        gate2: gate(phi2),
    };
    let normalized = XParams {
        u: C64::new(x.u.norm(), 0.0),
        v: C64::new(x.v.norm(), 0.0),
        ..*x
    };
    (normalized, lu)
}
