//! Dense complex 2x2 and 4x4 matrices.
//!
//! Everything in this crate lives in the two-qubit Hilbert space, so the
//! matrix types are fixed-size and stack-allocated. The basis order is
//! |00>, |01>, |10>, |11> throughout; index (i, j) of a 4x4 operator refers
//! to row i = 2*i1 + i2 with i1 the first-qubit index.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative Frobenius tolerance for Hermiticity and unitarity checks.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Which qubit of the pair an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::First => write!(f, "first"),
            Side::Second => write!(f, "second"),
        }
    }
}

macro_rules! matrix_impl {
    ($name:ident, $n:expr) => {
        #[derive(Clone, Copy, PartialEq)]
        pub struct $name {
            data: [[C64; $n]; $n],
        }

        impl $name {
            pub const DIM: usize = $n;

            pub fn zero() -> Self {
                Self {
                    data: [[C64::new(0.0, 0.0); $n]; $n],
                }
            }

            pub fn identity() -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    m.data[i][i] = C64::new(1.0, 0.0);
                }
                m
            }

            pub fn from_rows(rows: [[C64; $n]; $n]) -> Self {
                Self { data: rows }
            }

            /// Builds a real matrix; convenient for the many real gates here.
            pub fn from_real(rows: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        m.data[i][j] = C64::new(rows[i][j], 0.0);
                    }
                }
                m
            }

            pub fn from_diag(diag: [f64; $n]) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    m.data[i][i] = C64::new(diag[i], 0.0);
                }
                m
            }

            pub fn transpose(&self) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        m.data[i][j] = self.data[j][i];
                    }
                }
                m
            }

            pub fn conj(&self) -> Self {
                let mut m = *self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.data[i][j] = m.data[i][j].conj();
                    }
                }
                m
            }

            /// Conjugate transpose.
            pub fn adjoint(&self) -> Self {
                self.transpose().conj()
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.data[i][i]).sum()
            }

            pub fn norm_fro(&self) -> f64 {
                self.data
                    .iter()
                    .flatten()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            }

            pub fn scale(&self, s: f64) -> Self {
                let mut m = *self;
                for row in m.data.iter_mut() {
                    for z in row.iter_mut() {
                        *z *= s;
                    }
                }
                m
            }

            pub fn scale_c(&self, s: C64) -> Self {
                let mut m = *self;
                for row in m.data.iter_mut() {
                    for z in row.iter_mut() {
                        *z *= s;
                    }
                }
                m
            }

            /// Relative Frobenius deviation from M = M†.
            pub fn hermiticity_error(&self) -> f64 {
                let dev = (*self - self.adjoint()).norm_fro();
                dev / self.norm_fro().max(1.0)
            }

            pub fn is_hermitian(&self) -> bool {
                self.hermiticity_error() <= HERMITICITY_TOL
            }

            pub fn require_hermitian(&self) -> Result<()> {
                let deviation = self.hermiticity_error();
                if deviation <= HERMITICITY_TOL {
                    Ok(())
                } else {
                    Err(Error::NotHermitian { deviation })
                }
            }

            /// Relative deviation from U†U = I.
            pub fn unitarity_error(&self) -> f64 {
                (self.adjoint() * *self - Self::identity()).norm_fro()
            }

            pub fn is_unitary(&self) -> bool {
                self.unitarity_error() <= HERMITICITY_TOL * ($n as f64)
            }

            pub fn require_unitary(&self) -> Result<()> {
                let deviation = self.unitarity_error();
                if deviation <= HERMITICITY_TOL * ($n as f64) {
                    Ok(())
                } else {
                    Err(Error::NotUnitary { deviation })
                }
            }

            /// Forces exact Hermiticity by averaging with the adjoint.
            pub fn symmetrize(&self) -> Self {
                let adj = self.adjoint();
                let mut m = Self::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        m.data[i][j] = (self.data[i][j] + adj.data[i][j]) * 0.5;
                    }
                }
                m
            }

            pub fn commutator(&self, other: &Self) -> Self {
                *self * *other - *other * *self
            }

            /// ‖[A, B]‖_F / max(‖A‖_F, 1): the residual used by all the
            /// commutant membership tests in this crate.
            pub fn commutation_residual(&self, other: &Self) -> f64 {
                self.commutator(other).norm_fro() / self.norm_fro().max(1.0)
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = C64;
            fn index(&self, (i, j): (usize, usize)) -> &C64 {
                &self.data[i][j]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
                &mut self.data[i][j]
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.data[i][j] += rhs.data[i][j];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.data[i][j] -= rhs.data[i][j];
                    }
                }
                m
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(-1.0)
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                let mut m = $name::zero();
                for i in 0..$n {
                    for k in 0..$n {
                        let a = self.data[i][k];
                        if a.norm_sqr() == 0.0 {
                            continue;
                        }
                        for j in 0..$n {
                            m.data[i][j] += a * rhs.data[k][j];
                        }
                    }
                }
                m
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                writeln!(f, "{} [", stringify!($name))?;
                for row in self.data.iter() {
                    write!(f, "  ")?;
                    for z in row.iter() {
                        write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
                    }
                    writeln!(f)?;
                }
                write!(f, "]")
            }
        }
    };
}

matrix_impl!(Mat2, 2);
matrix_impl!(Mat4, 4);

/// Kronecker product: block (i, j) of the result is A[i][j] * B.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    m
}

/// Traces out one qubit of a two-qubit operator, keeping `keep`.
pub fn partial_trace(rho: &Mat4, keep: Side) -> Mat2 {
    let mut m = Mat2::zero();
    match keep {
        Side::First => {
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = rho[(2 * i, 2 * j)] + rho[(2 * i + 1, 2 * j + 1)];
                }
            }
        }
        Side::Second => {
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = rho[(i, j)] + rho[(2 + i, 2 + j)];
                }
            }
        }
    }
    m
}

/// Transpose on the second-qubit index pair: element ((i,a),(j,b)) of the
/// result is element ((i,b),(j,a)) of the input.
pub fn partial_transpose(rho: &Mat4) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    m[(2 * i + a, 2 * j + b)] = rho[(2 * i + b, 2 * j + a)];
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_multiplication() {
        let id = Mat4::identity();
        let m = Mat4::from_real([
            [1.0, 2.0, 3.0, 4.0],
            [5.0, 6.0, 7.0, 8.0],
            [9.0, 10.0, 11.0, 12.0],
            [13.0, 14.0, 15.0, 16.0],
        ]);
        assert_eq!(id * m, m);
        assert_eq!(m * id, m);
    }

    #[test]
    fn adjoint_of_product() {
        let a = Mat2::from_rows([[c(1.0, 2.0), c(0.0, -1.0)], [c(3.0, 0.0), c(0.5, 0.5)]]);
        let b = Mat2::from_rows([[c(0.0, 1.0), c(2.0, 0.0)], [c(1.0, 1.0), c(0.0, 0.0)]]);
        let lhs = (a * b).adjoint();
        let rhs = b.adjoint() * a.adjoint();
        assert!((lhs - rhs).norm_fro() < 1e-15);
    }

    #[test]
    fn partial_trace_of_maximally_mixed() {
        let rho = Mat4::identity().scale(0.25);
        for side in [Side::First, Side::Second] {
            let red = partial_trace(&rho, side);
            assert!((red - Mat2::identity().scale(0.5)).norm_fro() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_bell_state() {
        // (|00> + |11>)(<00| + <11|) / 2
        let mut rho = Mat4::zero();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            rho[(i, j)] = c(0.5, 0.0);
        }
        for side in [Side::First, Side::Second] {
            let red = partial_trace(&rho, side);
            assert!((red - Mat2::identity().scale(0.5)).norm_fro() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho_a = Mat2::from_rows([[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]]);
        let rho_b = Mat2::from_rows([[c(0.4, 0.0), c(0.0, 0.1)], [c(0.0, -0.1), c(0.6, 0.0)]]);
        let rho = kron(&rho_a, &rho_b);
        assert!((partial_trace(&rho, Side::First) - rho_a).norm_fro() < 1e-15);
        assert!((partial_trace(&rho, Side::Second) - rho_b).norm_fro() < 1e-15);
    }

    #[test]
    fn partial_transpose_fixes_diagonal() {
        let rho = Mat4::from_diag([0.1, 0.2, 0.3, 0.4]);
        assert_eq!(partial_transpose(&rho), rho);
    }

    #[test]
    fn partial_transpose_is_involution_and_trace_preserving() {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = c(
                    (i * 4 + j) as f64 * 0.13 - 0.9,
                    (i as f64 - j as f64) * 0.21,
                );
            }
        }
        let m = m.symmetrize();
        let pt = partial_transpose(&m);
        assert_eq!(partial_transpose(&pt), m);
        assert_eq!(pt.trace(), m.trace());
        assert!(pt.is_hermitian());
    }

    #[test]
    fn trace_of_both_partial_traces() {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = c(0.05 * (i + j) as f64, 0.02 * (i as f64 - j as f64));
            }
        }
        let m = m.symmetrize();
        let t = m.trace();
        for side in [Side::First, Side::Second] {
            let dt = partial_trace(&m, side).trace() - t;
            assert!(dt.norm() < 1e-12);
        }
    }
}
