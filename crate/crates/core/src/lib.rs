pub mod correlations;
pub mod eigen;
pub mod error;
pub mod families;
pub mod matrix;
pub mod pauli;
pub mod sweep;
pub mod thermal;
pub mod transforms;

pub use correlations::{
    concurrence_general, concurrence_x, correlation_report, discord, discord_oracle,
    measured_conditional_entropy, ppt_separable, von_neumann_entropy, von_neumann_entropy2,
    work_deficit, work_deficit_oracle, BranchKind, BranchReport, CorrelationReport,
    MeasureReport, MeasurementAngles, XParams, DEFAULT_GRID_RESOLUTION,
};
pub use eigen::{eig2_closed, hermitian_eig4, matrix_function, Spectrum};
pub use error::{Error, Result};
pub use families::{
    build_hamiltonian, commuting_families, cross_couplings, dm_ksea, full_hamiltonian,
    physical_projection, support, u_operator, CouplingSet, CrossCouplings, FamilyId,
    FamilyParams, Support,
};
pub use matrix::{kron, partial_trace, partial_transpose, C64, Mat2, Mat4, Side};
pub use pauli::{bloch_compose, bloch_decompose, pauli, pauli_pair, PauliIndex, PauliVector};
pub use thermal::{gibbs, partition_function, Temperature};
pub use transforms::{
    canonical_target, canonicalizer, canonicalizer_description, conjugate, family_spectrum,
    hadamard, phase_normalize_x, quasidiag_transform, quasidiagonalize, reduce_to_x,
    remap_parameters, remap_under, swap_operator, y_tilde, y_transform, BlockPair, LocalUnitary,
};
