use thiserror::Error;

use crate::families::FamilyId;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix required to be Hermitian deviated too far from M = M†.
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// A matrix required to be unitary deviated too far from U†U = I.
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    /// A matrix failed the density-matrix checks (trace one, positive
    /// semidefinite, Hermitian).
    #[error("not a valid density matrix: {reason}")]
    NotDensityMatrix { reason: String },

    /// A matrix does not commute with the symmetry operator of the family
    /// it was claimed to belong to.
    #[error("matrix is not in family {family} (commutation residual {residual:.3e})")]
    NotInFamily { family: FamilyId, residual: f64 },

    /// Parameter keys do not match the support of the requested family.
    #[error("parameter keys do not match the support of family {family}")]
    SupportMismatch { family: FamilyId },

    /// Families with a unit-index factor have no X reduction.
    #[error("family {0} is not reducible to the X form")]
    NotXReducible(FamilyId),

    /// Temperatures must be strictly positive (energy units).
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),

    /// A scalar function was applied to a matrix whose spectrum leaves the
    /// function's domain.
    #[error("function undefined at eigenvalue {0}")]
    UndefinedAtEigenvalue(f64),

    /// X-state parameters violating positivity or normalization.
    #[error("invalid X-state parameters: {0}")]
    InvalidXParams(String),

    /// A correlation measure came out below the numerical noise floor.
    #[error("measure evaluated to {0}, below the -1e-9 round-off floor")]
    NegativeMeasure(f64),

    /// A two-character family name that is not one of the fifteen.
    #[error("invalid family name {0:?} (expected two characters over 0xyz, not \"00\")")]
    BadFamilyName(String),

    /// A gate whose conjugation does not permute the Pauli basis, so
    /// family parameters cannot be remapped through it.
    #[error("gate does not map the Pauli basis to signed Pauli operators")]
    NotPauliPermutation,

    /// A sweep grid that is empty or runs backwards.
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
