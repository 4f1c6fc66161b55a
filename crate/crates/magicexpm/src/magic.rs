//! The magic matrix, the swap matrix, and the SO(4) <-> SU(2)x(2)SU(2)
//! correspondence at group and algebra level.
//!
//! `R` maps product unitaries to real rotations by conjugation:
//! `F(A (x) B) = R^dagger (A (x) B) R` lands in SO(4). At the algebra level
//! the same conjugation identifies `i(a (x) 1 + 1 (x) b)` with a real
//! antisymmetric matrix whose self-dual and anti-self-dual halves (under the
//! Hodge star) are exactly the two su(2) factors.

use std::fmt;

use crate::evolve::Hamiltonian4;
use crate::pauli::Su2Vector;
use crate::smallmat::{sigma, tensor, C64, CMat2, CMat4, ID2, SIGMA1, SIGMA2, SIGMA3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagicError {
    /// `group_map` was handed a factor that is not special unitary.
    NonSpecialUnitaryInput,
    /// `conjugate_traceless_symmetric` needs a real symmetric traceless input.
    NotSymmetricTraceless,
}

impl fmt::Display for MagicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagicError::NonSpecialUnitaryInput => {
                write!(f, "input factor is not special unitary within tolerance")
            }
            MagicError::NotSymmetricTraceless => {
                write!(f, "input is not real symmetric traceless within tolerance")
            }
        }
    }
}

impl std::error::Error for MagicError {}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The magic matrix: columns are the Bell states with phases
/// `(|P1>, -i|P2>, -|P3>, -i|P4>)`.
///
/// Phase conventions are the classic source of silent sign errors here, so
/// debug builds cross-check the explicit entries against the column
/// definition.
pub fn magic_matrix() -> CMat4 {
    let i = C64::new(0.0, 1.0);
    let one = C64::ONE;
    let zero = C64::ZERO;
    let r = CMat4::from_rows([
        [one, zero, zero, -i],
        [zero, -i, -one, zero],
        [zero, -i, one, zero],
        [one, zero, zero, i],
    ]) * FRAC_1_SQRT_2;

    debug_assert!({
        // Bell columns: |P1> = (|00>+|11>)/sqrt2, |P2> = (|01>+|10>)/sqrt2,
        // |P3> = (|01>-|10>)/sqrt2, |P4> = (|00>-|11>)/sqrt2.
        let bell = [
            [one, zero, zero, one],
            [zero, one, one, zero],
            [zero, one, -one, zero],
            [one, zero, zero, -one],
        ];
        let phase = [one, -i, -one, -i];
        let mut ok = true;
        for (col, (b, ph)) in bell.iter().zip(phase.iter()).enumerate() {
            for row in 0..4 {
                let want = b[row] * ph * FRAC_1_SQRT_2;
                ok &= (r[(row, col)] - want).norm() < 1e-15;
            }
        }
        ok
    });
    r
}

/// The swap (exchange) matrix `S = (1(x)1 + s1(x)s1 + s2(x)s2 + s3(x)s3)/2`,
/// the permutation exchanging the two qubit factors; `S = S^T = S^{-1}`.
pub fn swap_matrix() -> CMat4 {
    (tensor(&ID2, &ID2)
        + tensor(&SIGMA1, &SIGMA1)
        + tensor(&SIGMA2, &SIGMA2)
        + tensor(&SIGMA3, &SIGMA3))
        * 0.5
}

/// The group-level isomorphism `R^dagger (a (x) b) R` in SO(4).
///
/// Both factors must be special unitary (checked to 1e-10); otherwise the
/// conjugation leaves the real orthogonal group and the caller almost
/// certainly passed the wrong thing.
pub fn group_map(a: &CMat2, b: &CMat2) -> Result<CMat4, MagicError> {
    for m in [a, b] {
        if !m.is_unitary(1e-10) || (m.det() - C64::ONE).norm() > 1e-10 {
            return Err(MagicError::NonSpecialUnitaryInput);
        }
    }
    let r = magic_matrix();
    Ok(r.dagger() * tensor(a, b) * r)
}

/// Real antisymmetric 4x4 matrix, stored by its upper-triangle entries.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct So4Element {
    pub f12: f64,
    pub f13: f64,
    pub f14: f64,
    pub f23: f64,
    pub f24: f64,
    pub f34: f64,
}

impl So4Element {
    pub fn new(f12: f64, f13: f64, f14: f64, f23: f64, f24: f64, f34: f64) -> Self {
        Self { f12, f13, f14, f23, f24, f34 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Materialize the antisymmetric matrix; `A^T = -A` holds exactly.
    pub fn to_matrix(&self) -> CMat4 {
        CMat4::from_real([
            [0.0, self.f12, self.f13, self.f14],
            [-self.f12, 0.0, self.f23, self.f24],
            [-self.f13, -self.f23, 0.0, self.f34],
            [-self.f14, -self.f24, -self.f34, 0.0],
        ])
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.f12, self.f13, self.f14, self.f23, self.f24, self.f34]
    }
}

/// Algebra-level map: the antisymmetric matrix equal to
/// `i R^dagger (a (x) 1 + 1 (x) b) R`, written out entrywise.
pub fn algebra_map(a: &Su2Vector, b: &Su2Vector) -> So4Element {
    So4Element::new(
        a.x1 + b.x1,
        a.x2 - b.x2,
        a.x3 + b.x3,
        a.x3 - b.x3,
        -(a.x2 + b.x2),
        a.x1 - b.x1,
    )
}

/// Inverse of [`algebra_map`]: recovers the two su(2) vectors with
/// `R A R^dagger = i (a (x) 1 + 1 (x) b)`.
pub fn inverse_algebra_map(f: &So4Element) -> (Su2Vector, Su2Vector) {
    let a = Su2Vector::new(
        (f.f12 + f.f34) / 2.0,
        (f.f13 - f.f24) / 2.0,
        (f.f14 + f.f23) / 2.0,
    );
    let b = Su2Vector::new(
        (f.f12 - f.f34) / 2.0,
        -(f.f13 + f.f24) / 2.0,
        (f.f14 - f.f23) / 2.0,
    );
    (a, b)
}

/// Hodge dual `(*F)_ij = (1/2) sum eps_ijkl F_kl` with `eps_1234 = 1`.
/// An involution; the `a`/`b` halves of [`inverse_algebra_map`] are its
/// self-dual and anti-self-dual eigenspaces.
pub fn hodge_star(f: &So4Element) -> So4Element {
    So4Element::new(f.f34, -f.f24, f.f23, f.f14, -f.f13, f.f12)
}

/// Coefficients of a Hermitian 4x4 matrix over the traceless tensor-product
/// basis `s_i (x) s_j`, `(i, j) != (0, 0)`; `coefficients[0][0]` stays zero.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct TensorDecomposition {
    pub coefficients: [[f64; 4]; 4],
}

/// The nine basis slots a conjugated traceless symmetric matrix can occupy.
pub const SYMMETRIC_SECTOR: [(usize, usize); 9] = [
    (1, 0),
    (3, 0),
    (0, 2),
    (0, 3),
    (3, 2),
    (1, 3),
    (3, 3),
    (1, 2),
    (2, 1),
];

impl TensorDecomposition {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        self.coefficients[i][j]
    }

    /// Project a Hermitian matrix onto the basis: `c_ij = Tr((s_i (x) s_j) m) / 4`.
    pub fn from_hermitian(m: &CMat4) -> Self {
        let mut d = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) == (0, 0) {
                    continue;
                }
                d.coefficients[i][j] = ((tensor(&sigma(i), &sigma(j)) * *m).trace() / 4.0).re;
            }
        }
        d
    }

    /// Rebuild `sum c_ij s_i (x) s_j`.
    pub fn reconstruct(&self) -> CMat4 {
        let mut m = CMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) == (0, 0) {
                    continue;
                }
                let c = self.coefficients[i][j];
                if c != 0.0 {
                    m = m + tensor(&sigma(i), &sigma(j)) * c;
                }
            }
        }
        m
    }
}

/// Tensor-basis decomposition of `R^dagger H R` for a zero-diagonal real
/// symmetric Hamiltonian, written from the closed-form coefficients:
///
/// ```text
/// ((h13-h24)/2 s1 + (h14+h23)/2 s3) (x) 1
///   + 1 (x) ((h13+h24)/2 s2 + (h14-h23)/2 s3)
///   + (h12+h34)/2 s3 (x) s2 - (h12-h34)/2 s1 (x) s3.
/// ```
pub fn conjugate_hamiltonian(h: &Hamiltonian4) -> TensorDecomposition {
    let mut d = TensorDecomposition::zero();
    d.coefficients[1][0] = (h.h13 - h.h24) / 2.0;
    d.coefficients[3][0] = (h.h14 + h.h23) / 2.0;
    d.coefficients[0][2] = (h.h13 + h.h24) / 2.0;
    d.coefficients[0][3] = (h.h14 - h.h23) / 2.0;
    d.coefficients[3][2] = (h.h12 + h.h34) / 2.0;
    d.coefficients[1][3] = -(h.h12 - h.h34) / 2.0;
    d
}

/// Tensor-basis decomposition of `R^dagger K R` for a traceless real
/// symmetric `K` (possibly with a nonzero diagonal), obtained by numerical
/// projection rather than transcribed coefficient formulas.
pub fn conjugate_traceless_symmetric(k: &CMat4) -> Result<TensorDecomposition, MagicError> {
    let symmetric = k.frobenius_distance(&k.transpose()) <= 1e-10;
    if !symmetric || k.imag_norm() > 1e-10 || k.trace().norm() > 1e-10 {
        return Err(MagicError::NotSymmetricTraceless);
    }
    let r = magic_matrix();
    Ok(TensorDecomposition::from_hermitian(&(r.dagger() * *k * r)))
}
