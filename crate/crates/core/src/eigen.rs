//! Hermitian eigenproblems for the fixed 2x2 and 4x4 sizes.
//!
//! Two routes are exposed on purpose: the closed-form 2x2 solver that the
//! block structure of the symmetry families reduces everything to, and a
//! cyclic Jacobi iteration on the full 4x4 matrix as a structure-free
//! cross-check. Tests pit one against the other.

use crate::error::{Error, Result};
use crate::matrix::{C64, Mat2, Mat4};

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
///
/// (tr ± sqrt(tr² - 4 det)) / 2, written in the cancellation-free form
/// with the radicand (a - d)² + 4|b|², which is non-negative for Hermitian
/// input by construction.
pub fn eig2_closed(m: &Mat2) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b2 = m[(0, 1)].norm_sqr();
    let half_tr = 0.5 * (a + d);
    let disc = (0.5 * (a - d)).hypot(b2.sqrt());
    (half_tr - disc, half_tr + disc)
}

/// Full eigendecomposition of a Hermitian 4x4 matrix.
#[derive(Debug, Clone, Copy)]
pub struct Spectrum {
    /// Eigenvalues sorted ascending.
    pub eigenvalues: [f64; 4],
    /// Orthonormal eigenvectors as the columns of a unitary matrix, in the
    /// same order as `eigenvalues`.
    pub eigenvectors: Mat4,
}

const JACOBI_SWEEPS: usize = 64;

/// Cyclic Jacobi iteration for complex Hermitian 4x4 matrices.
///
/// Each rotation annihilates one off-diagonal pair; the off-diagonal mass
/// converges quadratically, so a handful of sweeps reaches machine
/// precision. Rejects matrices that are not Hermitian.
pub fn hermitian_eig4(m: &Mat4) -> Result<Spectrum> {
    m.require_hermitian()?;
    let mut a = m.symmetrize();
    let mut v = Mat4::identity();
    let scale = a.norm_fro().max(1.0);

    for _ in 0..JACOBI_SWEEPS {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                let apq = a[(p, q)];
                let beta = apq.norm();
                if beta <= 1e-300 {
                    continue;
                }
                // Phase factor that makes the (p, q) element real, then a
                // real Jacobi rotation that zeroes it.
                let phase = apq / beta;
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let theta = (gamma - alpha) / (2.0 * beta);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let mut j = Mat4::identity();
                j[(p, p)] = C64::new(c, 0.0);
                j[(p, q)] = C64::new(s, 0.0);
                j[(q, p)] = -phase.conj() * s;
                j[(q, q)] = phase.conj() * c;

                a = j.adjoint() * a * j;
                v = v * j;
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = Mat4::zero();
    for (slot, &col) in order.iter().enumerate() {
        eigenvalues[slot] = a[(col, col)].re;
        for row in 0..4 {
            eigenvectors[(row, slot)] = v[(row, col)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Applies a real scalar function to a Hermitian matrix through its
/// spectral decomposition: V f(Λ) V†.
///
/// Rejects input where `f` returns a non-finite value on some eigenvalue.
pub fn matrix_function<F: Fn(f64) -> f64>(m: &Mat4, f: F) -> Result<Mat4> {
    let spec = hermitian_eig4(m)?;
    let mut fvals = [0.0; 4];
    for (i, &lambda) in spec.eigenvalues.iter().enumerate() {
        let y = f(lambda);
        if !y.is_finite() {
            return Err(Error::UndefinedAtEigenvalue(lambda));
        }
        fvals[i] = y;
    }
    let v = spec.eigenvectors;
    let mut diag = Mat4::zero();
    for i in 0..4 {
        diag[(i, i)] = C64::new(fvals[i], 0.0);
    }
    Ok((v * diag * v.adjoint()).symmetrize())
}
