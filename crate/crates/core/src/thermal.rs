//! Thermal equilibrium states: ρ = exp(-H/T) / Z with T in energy units.

use crate::eigen::hermitian_eig4;
use crate::error::{Error, Result};
use crate::matrix::{C64, Mat4};

/// Strictly positive temperature in the same energy units as the
/// Hamiltonian couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(value: f64) -> Result<Temperature> {
        if value.is_finite() && value > 0.0 {
            Ok(Temperature(value))
        } else {
            Err(Error::NonPositiveTemperature(value))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// The Gibbs density matrix of a Hermitian Hamiltonian.
///
/// Computed through the spectral decomposition with the ground-state
/// energy subtracted before exponentiation, so the weights never overflow.
/// The result is Hermitian, unit trace, positive semidefinite, and
/// inherits every U-operator symmetry of H.
pub fn gibbs(h: &Mat4, t: Temperature) -> Result<Mat4> {
    let spec = hermitian_eig4(h)?;
    let e0 = spec.eigenvalues[0];
    let mut weights = [0.0; 4];
    let mut z = 0.0;
    for (w, &e) in weights.iter_mut().zip(&spec.eigenvalues) {
        *w = (-(e - e0) / t.value()).exp();
        z += *w;
    }
    let v = spec.eigenvectors;
    let mut diag = Mat4::zero();
    for i in 0..4 {
        diag[(i, i)] = C64::new(weights[i] / z, 0.0);
    }
    Ok((v * diag * v.adjoint()).symmetrize())
}

/// The partition function Z = Σ exp(-λ_i / T) over the spectrum of H.
pub fn partition_function(h: &Mat4, t: Temperature) -> Result<f64> {
    let spec = hermitian_eig4(h)?;
    Ok(spec
        .eigenvalues
        .iter()
        .map(|&e| (-e / t.value()).exp())
        .sum())
}
