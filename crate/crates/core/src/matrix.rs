//! Minimal dense 2x2 complex matrix, enough for the plane-restricted
//! dynamics and its closed forms.

use num_complex::Complex64;
use std::ops::{Mul, Neg};

/// A 2x2 complex matrix in row-major order: `m_rc` is row r, column c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl ComplexMatrix2 {
    /// Build from row-major entries.
    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Self::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m11.conj(),
            self.m21.conj(),
            self.m12.conj(),
            self.m22.conj(),
        )
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        ]
    }

    /// Largest entrywise absolute difference from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = [
            (self.m11 - other.m11).norm(),
            (self.m12 - other.m12).norm(),
            (self.m21 - other.m21).norm(),
            (self.m22 - other.m22).norm(),
        ];
        d.into_iter().fold(0.0, f64::max)
    }

    /// Largest entrywise deviation of `self† self` from the identity;
    /// zero (up to roundoff) exactly when the matrix is unitary.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    /// Norms of the two columns, in order. For a unitary both are 1; the
    /// leakage operator contracts exactly one of them.
    pub fn column_norms(&self) -> [f64; 2] {
        [
            (self.m11.norm_sqr() + self.m21.norm_sqr()).sqrt(),
            (self.m12.norm_sqr() + self.m22.norm_sqr()).sqrt(),
        ]
    }
}

impl Mul for ComplexMatrix2 {
    type Output = ComplexMatrix2;

    fn mul(self, rhs: ComplexMatrix2) -> ComplexMatrix2 {
        ComplexMatrix2::new(
            self.m11 * rhs.m11 + self.m12 * rhs.m21,
            self.m11 * rhs.m12 + self.m12 * rhs.m22,
            self.m21 * rhs.m11 + self.m22 * rhs.m21,
            self.m21 * rhs.m12 + self.m22 * rhs.m22,
        )
    }
}

impl Neg for ComplexMatrix2 {
    type Output = ComplexMatrix2;

    fn neg(self) -> ComplexMatrix2 {
        ComplexMatrix2::new(-self.m11, -self.m12, -self.m21, -self.m22)
    }
}
