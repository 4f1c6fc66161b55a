//! Brute-force matrix exponentials and logarithms used to validate the
//! closed forms.
//!
//! Two independent exponential routes are provided on purpose: a cyclic-Jacobi
//! eigendecomposition for Hermitian generators and a scaling-and-squaring
//! Taylor series for arbitrary generators. They must agree with each other
//! before either is trusted against a closed form. Nothing in this module may
//! depend on `pauli`, `magic`, `evolve` or `bch`.

use std::fmt;

use num_complex::Complex;

use crate::smallmat::CMat4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// Input to `expm_hermitian` was not Hermitian within tolerance.
    NotHermitian,
    /// Input to `logm_unitary` was not unitary within tolerance.
    NotUnitary,
    /// An eigenphase of the input sits within tolerance of +-pi, where the
    /// principal logarithm is discontinuous.
    BranchCut,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotHermitian => write!(f, "matrix is not Hermitian within tolerance"),
            OracleError::NotUnitary => write!(f, "matrix is not unitary within tolerance"),
            OracleError::BranchCut => {
                write!(f, "eigenphase too close to +-pi for the principal logarithm")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Sign of the exponent in `expm_hermitian`: `e^{+itH}` or `e^{-itH}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpSign {
    PlusI,
    MinusI,
}

impl ExpSign {
    fn factor(self) -> f64 {
        match self {
            ExpSign::PlusI => 1.0,
            ExpSign::MinusI => -1.0,
        }
    }
}

const JACOBI_SWEEPS: usize = 50;
const JACOBI_THRESHOLD: f64 = 1e-15;

/// Eigendecomposition of a Hermitian 4x4 matrix by cyclic Jacobi rotations:
/// `m = v diag(eigenvalues) v^dagger`. Eigenvalues are not sorted.
pub fn jacobi_hermitian(m: &CMat4) -> ([f64; 4], CMat4) {
    // Symmetrize once so rounding drift in the caller cannot accumulate.
    let mut a = (*m + m.dagger()) * 0.5;
    let mut v = CMat4::identity();
    let tol = JACOBI_THRESHOLD * a.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..3 {
            for q in (p + 1)..4 {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let w = a[(p, q)];
                let wn = w.norm();
                if wn <= tol {
                    continue;
                }
                // Phase-rotate the pivot to a real entry, then apply the
                // classic symmetric Jacobi rotation that zeroes it.
                let phi = w.arg();
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * wn);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let eph = Complex::from_polar(1.0, 0.5 * phi);
                let mut j = CMat4::identity();
                j[(p, p)] = eph * c;
                j[(p, q)] = eph * s;
                j[(q, p)] = -eph.conj() * s;
                j[(q, q)] = eph.conj() * c;
                a = j.dagger() * a * j;
                v = v * j;
            }
        }
    }

    let eig = [a[(0, 0)].re, a[(1, 1)].re, a[(2, 2)].re, a[(3, 3)].re];
    (eig, v)
}

/// `e^{iota * i * t * H}` for Hermitian `H`, via eigendecomposition.
pub fn expm_hermitian(iota: ExpSign, h: &CMat4, t: f64) -> Result<CMat4, OracleError> {
    if !h.is_hermitian(1e-10) {
        return Err(OracleError::NotHermitian);
    }
    let (eig, v) = jacobi_hermitian(h);
    let mut d = CMat4::zero();
    for k in 0..4 {
        d[(k, k)] = Complex::from_polar(1.0, iota.factor() * t * eig[k]);
    }
    Ok(v * d * v.dagger())
}

/// `e^M` for an arbitrary 4x4 matrix by scaling and squaring: scale so that
/// the Frobenius norm is at most 1/2, sum the Taylor series until the term
/// norm drops below 1e-20, then square the scalings away.
pub fn expm_series(m: &CMat4) -> CMat4 {
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = *m * 0.5f64.powi(squarings);

    let mut result = CMat4::identity();
    let mut term = CMat4::identity();
    for k in 1..=60u32 {
        term = term * scaled * (1.0 / f64::from(k));
        result = result + term;
        if term.frobenius_norm() < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

const BRANCH_TOLERANCE: f64 = 1e-8;

/// Principal logarithm of a unitary matrix: the anti-Hermitian `L` with
/// `e^L = U` and all eigenphases in (-pi, pi).
///
/// A unitary splits into commuting Hermitian parts `A = (U + U^dagger)/2` and
/// `B = (U - U^dagger)/(2i)`. Diagonalizing a fixed real combination `A + cB`
/// diagonalizes both simultaneously unless two distinct eigenphases collide in
/// that combination, so a few values of `c` are tried and the basis with the
/// smallest joint off-diagonal residue wins.
pub fn logm_unitary(u: &CMat4) -> Result<CMat4, OracleError> {
    if !u.is_unitary(1e-10) {
        return Err(OracleError::NotUnitary);
    }
    let a = (*u + u.dagger()) * 0.5;
    let b = (*u - u.dagger()) * Complex::new(0.0, -0.5);

    // cos(theta) + c sin(theta) separates eigenphases theta1 != theta2 unless
    // theta1 + theta2 = 2 atan(c) mod 2 pi; the mixes below cannot all fail.
    const MIXES: [f64; 3] = [0.618_033_988_749_894_9, -0.314_159_265_358_979_3, 1.732_050_807_568_877_2];

    let mut best: Option<(f64, CMat4, CMat4, CMat4)> = None;
    for &mix in &MIXES {
        let (_, v) = jacobi_hermitian(&(a + b * mix));
        let a_rot = v.dagger() * a * v;
        let b_rot = v.dagger() * b * v;
        let mut off = 0.0f64;
        for p in 0..4 {
            for q in 0..4 {
                if p != q {
                    off = off.max(a_rot[(p, q)].norm().max(b_rot[(p, q)].norm()));
                }
            }
        }
        if best.as_ref().is_none_or(|(prev, _, _, _)| off < *prev) {
            best = Some((off, v, a_rot, b_rot));
        }
        if off < 1e-12 {
            break;
        }
    }
    let (_, v, a_rot, b_rot) = best.expect("at least one mix is always evaluated");

    let mut d = CMat4::zero();
    for k in 0..4 {
        let theta = b_rot[(k, k)].re.atan2(a_rot[(k, k)].re);
        if std::f64::consts::PI - theta.abs() < BRANCH_TOLERANCE {
            return Err(OracleError::BranchCut);
        }
        d[(k, k)] = Complex::new(0.0, theta);
    }
    Ok(v * d * v.dagger())
}
