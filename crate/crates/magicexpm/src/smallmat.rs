//! Dense complex 2x2 and 4x4 matrices with value semantics.
//!
//! Everything downstream (the magic-basis maps, the evolution operators, the
//! BCH formulas and the brute-force oracles) runs on these two fixed sizes,
//! so the arithmetic is written out directly instead of pulling in a general
//! linear-algebra crate.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

pub type C64 = Complex<f64>;

const fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Dense complex 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat2 {
    pub entries: [[C64; 2]; 2],
}

/// Dense complex 4x4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat4 {
    pub entries: [[C64; 4]; 4],
}

/// 2x2 identity.
pub const ID2: CMat2 = CMat2 {
    entries: [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
};

/// First Pauli matrix.
pub const SIGMA1: CMat2 = CMat2 {
    entries: [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
};

/// Second Pauli matrix.
pub const SIGMA2: CMat2 = CMat2 {
    entries: [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
};

/// Third Pauli matrix.
pub const SIGMA3: CMat2 = CMat2 {
    entries: [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
};

/// `sigma(0) = 1_2`, `sigma(1..=3)` the Pauli matrices.
pub fn sigma(k: usize) -> CMat2 {
    match k {
        0 => ID2,
        1 => SIGMA1,
        2 => SIGMA2,
        3 => SIGMA3,
        _ => panic!("sigma index must be 0..=3, got {k}"),
    }
}

macro_rules! impl_cmat {
    ($name:ident, $n:expr) => {
        impl $name {
            pub const DIM: usize = $n;

            pub fn zero() -> Self {
                Self {
                    entries: [[C64::ZERO; $n]; $n],
                }
            }

            pub fn identity() -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    m.entries[i][i] = C64::ONE;
                }
                m
            }

            pub fn from_rows(entries: [[C64; $n]; $n]) -> Self {
                Self { entries }
            }

            pub fn from_real(rows: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] = c(rows[i][j], 0.0);
                    }
                }
                m
            }

            /// Conjugate transpose.
            pub fn dagger(&self) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] = self.entries[j][i].conj();
                    }
                }
                m
            }

            /// Plain transpose (no conjugation).
            pub fn transpose(&self) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] = self.entries[j][i];
                    }
                }
                m
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.entries[i][i]).sum()
            }

            pub fn frobenius_norm(&self) -> f64 {
                self.entries
                    .iter()
                    .flatten()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            }

            pub fn frobenius_distance(&self, other: &Self) -> f64 {
                (*self - *other).frobenius_norm()
            }

            /// Frobenius norm of the imaginary part.
            pub fn imag_norm(&self) -> f64 {
                self.entries
                    .iter()
                    .flatten()
                    .map(|z| z.im * z.im)
                    .sum::<f64>()
                    .sqrt()
            }

            pub fn is_unitary(&self, tol: f64) -> bool {
                (self.dagger() * *self).frobenius_distance(&Self::identity()) <= tol
            }

            pub fn is_hermitian(&self, tol: f64) -> bool {
                self.frobenius_distance(&self.dagger()) <= tol
            }

            /// Real entries and `A^T A = 1`, both within `tol`.
            pub fn is_real_orthogonal(&self, tol: f64) -> bool {
                self.imag_norm() <= tol
                    && (self.transpose() * *self).frobenius_distance(&Self::identity()) <= tol
            }

            pub fn is_traceless(&self, tol: f64) -> bool {
                self.trace().norm() <= tol
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = C64;
            fn index(&self, (i, j): (usize, usize)) -> &C64 {
                &self.entries[i][j]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
                &mut self.entries[i][j]
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] += rhs.entries[i][j];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] -= rhs.entries[i][j];
                    }
                }
                m
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] = -m.entries[i][j];
                    }
                }
                m
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    for k in 0..$n {
                        let a = self.entries[i][k];
                        if a == C64::ZERO {
                            continue;
                        }
                        for j in 0..$n {
                            m.entries[i][j] += a * rhs.entries[k][j];
                        }
                    }
                }
                m
            }
        }

        impl Mul<C64> for $name {
            type Output = Self;
            fn mul(self, rhs: C64) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.entries[i][j] *= rhs;
                    }
                }
                m
            }
        }

        impl Mul<f64> for $name {
            type Output = Self;
            fn mul(self, rhs: f64) -> Self {
                self * c(rhs, 0.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for i in 0..$n {
                    for j in 0..$n {
                        let z = self.entries[i][j];
                        write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
        }
    };
}

impl_cmat!(CMat2, 2);
impl_cmat!(CMat4, 4);

impl CMat2 {
    pub fn det(&self) -> C64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }
}

impl CMat4 {
    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> C64 {
        let e = &self.entries;
        let minor = |r0: usize, r1: usize, r2: usize, c0: usize, c1: usize, c2: usize| {
            e[r0][c0] * (e[r1][c1] * e[r2][c2] - e[r1][c2] * e[r2][c1])
                - e[r0][c1] * (e[r1][c0] * e[r2][c2] - e[r1][c2] * e[r2][c0])
                + e[r0][c2] * (e[r1][c0] * e[r2][c1] - e[r1][c1] * e[r2][c0])
        };
        e[0][0] * minor(1, 2, 3, 1, 2, 3) - e[0][1] * minor(1, 2, 3, 0, 2, 3)
            + e[0][2] * minor(1, 2, 3, 0, 1, 3)
            - e[0][3] * minor(1, 2, 3, 0, 1, 2)
    }

    /// Block-diagonal embedding `diag(a, b)`.
    pub fn block_diag(a: &CMat2, b: &CMat2) -> CMat4 {
        let mut m = CMat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.entries[i][j] = a.entries[i][j];
                m.entries[i + 2][j + 2] = b.entries[i][j];
            }
        }
        m
    }

    /// Top-left 2x2 block.
    pub fn upper_left_block(&self) -> CMat2 {
        CMat2::from_rows([
            [self.entries[0][0], self.entries[0][1]],
            [self.entries[1][0], self.entries[1][1]],
        ])
    }
}

/// Kronecker product in the basis ordering |00>, |01>, |10>, |11>, i.e. the
/// left factor indexes the high-order qubit: |ab> = |a> (x) |b>.
pub fn tensor(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut m = CMat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.entries[2 * i + k][2 * j + l] = a.entries[i][j] * b.entries[k][l];
                }
            }
        }
    }
    m
}

pub fn commutator2(a: &CMat2, b: &CMat2) -> CMat2 {
    *a * *b - *b * *a
}

pub fn commutator4(a: &CMat4, b: &CMat4) -> CMat4 {
    *a * *b - *b * *a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn entry() -> impl Strategy<Value = C64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| c(re, im))
    }

    fn mat2() -> impl Strategy<Value = CMat2> {
        proptest::array::uniform2(proptest::array::uniform2(entry()))
            .prop_map(CMat2::from_rows)
    }

    fn mat4() -> impl Strategy<Value = CMat4> {
        proptest::array::uniform4(proptest::array::uniform4(entry()))
            .prop_map(CMat4::from_rows)
    }

    #[test]
    fn tensor_identity() {
        assert_eq!(tensor(&ID2, &ID2), CMat4::identity());
    }

    #[test]
    fn tensor_sigma3_id() {
        let m = tensor(&SIGMA3, &ID2);
        let expected = CMat4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn tensor_sigma1_sigma1_antidiagonal() {
        // Hand-expanded Kronecker product: ones on the anti-diagonal.
        let m = tensor(&SIGMA1, &SIGMA1);
        let expected = CMat4::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let a = CMat4::from_real([
            [1.0, 2.0, 3.0, 4.0],
            [5.0, 6.0, 7.0, 8.0],
            [9.0, 1.0, 2.0, 3.0],
            [4.0, 5.0, 6.0, 7.0],
        ]);
        assert_eq!(commutator4(&CMat4::identity(), &a), CMat4::zero());
    }

    #[test]
    fn pauli_algebra() {
        // sigma1 sigma2 = i sigma3 and cyclic; squares are the identity.
        assert!((SIGMA1 * SIGMA2).frobenius_distance(&(SIGMA3 * c(0.0, 1.0))) < 1e-15);
        assert!((SIGMA2 * SIGMA3).frobenius_distance(&(SIGMA1 * c(0.0, 1.0))) < 1e-15);
        assert!((SIGMA3 * SIGMA1).frobenius_distance(&(SIGMA2 * c(0.0, 1.0))) < 1e-15);
        for k in 1..=3 {
            assert!((sigma(k) * sigma(k)).frobenius_distance(&ID2) < 1e-15);
        }
    }

    #[test]
    fn det4_matches_known_values() {
        assert_eq!(CMat4::identity().det(), C64::ONE);
        let mut d = CMat4::identity();
        d[(2, 2)] = c(3.0, 0.0);
        d[(3, 3)] = c(0.0, 2.0);
        assert!((d.det() - c(0.0, 6.0)).norm() < 1e-15);
        // Swapping two rows flips the sign.
        let mut p = CMat4::identity();
        p.entries.swap(0, 1);
        assert!((p.det() + C64::ONE).norm() < 1e-15);
    }

    #[test]
    fn predicates_basic() {
        assert!(CMat4::identity().is_unitary(1e-12));
        assert!(CMat4::identity().is_real_orthogonal(1e-12));
        assert!(CMat4::zero().is_traceless(1e-12));
        let h = CMat4::from_real([
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 2.0],
            [0.0, 0.0, 2.0, 0.0],
        ]);
        assert!(h.is_hermitian(1e-12));
        assert!(!h.is_unitary(1e-12));
    }

    #[test]
    fn block_diag_roundtrip() {
        let m = CMat4::block_diag(&SIGMA2, &ID2);
        assert_eq!(m.upper_left_block(), SIGMA2);
        assert!(m.is_unitary(1e-15));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn tensor_is_bilinear(a in mat2(), a2 in mat2(), b in mat2(), alpha in -3.0f64..3.0) {
            let lhs = tensor(&(a * alpha + a2), &b);
            let rhs = tensor(&a, &b) * alpha + tensor(&a2, &b);
            prop_assert!(lhs.frobenius_distance(&rhs) < 1e-13);
        }

        #[test]
        fn tensor_mixed_product_law(a in mat2(), b in mat2(), cc in mat2(), d in mat2()) {
            let lhs = tensor(&a, &b) * tensor(&cc, &d);
            let rhs = tensor(&(a * cc), &(b * d));
            prop_assert!(lhs.frobenius_distance(&rhs) < 1e-12);
        }

        #[test]
        fn dagger_distributes_over_tensor(a in mat2(), b in mat2()) {
            let lhs = tensor(&a, &b).dagger();
            let rhs = tensor(&a.dagger(), &b.dagger());
            prop_assert!(lhs.frobenius_distance(&rhs) < 1e-13);
        }

        #[test]
        fn dagger_is_involutive(a in mat4()) {
            prop_assert_eq!(a.dagger().dagger(), a);
        }

        #[test]
        fn frobenius_distance_to_self_is_zero(a in mat4()) {
            prop_assert_eq!(a.frobenius_distance(&a), 0.0);
        }
    }
}
