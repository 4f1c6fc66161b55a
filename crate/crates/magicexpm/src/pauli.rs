//! Vectors in R^3 standing for traceless Hermitian 2x2 matrices
//! `x1 s1 + x2 s2 + x3 s3`, and the exact SU(2) exponentiation formula
//!
//! ```text
//! e^{i(x1 s1 + x2 s2 + x3 s3)} = cos(r) 1_2 + i (sin(r)/r) (x1 s1 + x2 s2 + x3 s3),
//! r = sqrt(x1^2 + x2^2 + x3^2).
//! ```
//!
//! The vector form is kept separate from the matrix form because the BCH
//! coefficient formulas work with norms, dot and cross products directly and
//! must never re-extract coefficients from matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::smallmat::{CMat2, ID2, SIGMA1, SIGMA2, SIGMA3};

/// Coefficients of `x1 s1 + x2 s2 + x3 s3` in the Pauli basis.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Su2Vector {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Su2Vector {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn norm(&self) -> f64 {
        dot(self, self).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// The Hermitian traceless matrix this vector stands for.
    pub fn to_matrix(&self) -> CMat2 {
        SIGMA1 * self.x1 + SIGMA2 * self.x2 + SIGMA3 * self.x3
    }
}

impl Add for Su2Vector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Su2Vector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Su2Vector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Su2Vector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

/// Euclidean dot product; equals `Tr(XY)/2` for the associated matrices.
pub fn dot(x: &Su2Vector, y: &Su2Vector) -> f64 {
    x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3
}

/// Right-handed cross product; corresponds to `-(i/2)[X, Y]`.
pub fn cross(x: &Su2Vector, y: &Su2Vector) -> Su2Vector {
    Su2Vector::new(
        x.x2 * y.x3 - x.x3 * y.x2,
        x.x3 * y.x1 - x.x1 * y.x3,
        x.x1 * y.x2 - x.x2 * y.x1,
    )
}

/// `sin(r)/r`, switching to the Taylor series below 1e-6 to avoid 0/0.
/// Relative error of the truncation is far below machine epsilon there.
pub(crate) fn sinc(r: f64) -> f64 {
    if r.abs() < 1e-6 {
        let r2 = r * r;
        1.0 - r2 / 6.0 + r2 * r2 / 120.0
    } else {
        r.sin() / r
    }
}

/// Exact exponential `e^{i(x1 s1 + x2 s2 + x3 s3)}`; unitary with determinant 1.
pub fn exp_su2(v: &Su2Vector) -> CMat2 {
    let r = v.norm();
    ID2 * r.cos() + v.to_matrix() * Complex::new(0.0, sinc(r))
}
