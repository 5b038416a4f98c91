//! Dense 2x2 complex matrices, just enough for single-spin dynamics.

use std::ops::Mul;

use num_complex::Complex64;

/// Row-major 2x2 complex matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), d)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn add(&self, rhs: &Mat2) -> Self {
        Mat2::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }

    /// Largest entrywise absolute difference, the norm used by all the
    /// matrix tolerances in this crate.
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        [
            (self.a - rhs.a).norm(),
            (self.b - rhs.b).norm(),
            (self.c - rhs.c).norm(),
            (self.d - rhs.d).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// How far U U^dagger is from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Mat2::identity())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}
