//! Evolution operators `e^{-itH}` for zero-diagonal real symmetric 4x4
//! Hamiltonians: exact closed forms for the two special coupling classes, a
//! four-factor closed-form approximation for the generic class, and error
//! diagnostics against the brute-force oracle.

use std::fmt;

use num_complex::Complex;

use crate::magic::{magic_matrix, swap_matrix};
use crate::oracle::{expm_hermitian, ExpSign};
use crate::pauli::{exp_su2, Su2Vector};
use crate::smallmat::{tensor, CMat2, CMat4, ID2, SIGMA1, SIGMA2, SIGMA3};

/// Couplings below this magnitude count as exactly zero for class membership.
/// Misuse of an exact method should error rather than silently approximate.
pub const CLASS_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvolveError {
    /// `evolve_exact_cross` requires `h12 = h34 = 0`.
    NotCrossClass,
    /// `evolve_exact_checkerboard` requires `h13 = h24 = 0`.
    NotCheckerboardClass,
}

impl fmt::Display for EvolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvolveError::NotCrossClass => {
                write!(f, "Hamiltonian is not cross-class (h12 and h34 must vanish)")
            }
            EvolveError::NotCheckerboardClass => write!(
                f,
                "Hamiltonian is not checkerboard-class (h13 and h24 must vanish)"
            ),
        }
    }
}

impl std::error::Error for EvolveError {}

/// The six real couplings of a zero-diagonal real symmetric 4x4 Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Hamiltonian4 {
    pub h12: f64,
    pub h13: f64,
    pub h14: f64,
    pub h23: f64,
    pub h24: f64,
    pub h34: f64,
}

impl Hamiltonian4 {
    pub fn to_matrix(&self) -> CMat4 {
        CMat4::from_real([
            [0.0, self.h12, self.h13, self.h14],
            [self.h12, 0.0, self.h23, self.h24],
            [self.h13, self.h23, 0.0, self.h34],
            [self.h14, self.h24, self.h34, 0.0],
        ])
    }

    /// Cross class: the two off-diagonal 2x2 blocks carry all couplings.
    pub fn is_cross(&self) -> bool {
        self.h12.abs() <= CLASS_TOLERANCE && self.h34.abs() <= CLASS_TOLERANCE
    }

    /// Checkerboard class: couplings only between neighbours in the 1-2-3-4-1
    /// cycle.
    pub fn is_checkerboard(&self) -> bool {
        self.h13.abs() <= CLASS_TOLERANCE && self.h24.abs() <= CLASS_TOLERANCE
    }

    /// Conjugation by the swap matrix, `S H S`, as a coupling relabeling:
    /// swaps h12 with h13 and h24 with h34. Takes a checkerboard Hamiltonian
    /// to a cross one and vice versa.
    pub fn swap_conjugated(&self) -> Hamiltonian4 {
        Hamiltonian4 {
            h12: self.h13,
            h13: self.h12,
            h14: self.h14,
            h23: self.h23,
            h24: self.h34,
            h34: self.h24,
        }
    }

    pub fn max_coupling(&self) -> f64 {
        [self.h12, self.h13, self.h14, self.h23, self.h24, self.h34]
            .into_iter()
            .fold(0.0f64, |m, h| m.max(h.abs()))
    }

    /// The su(2) vectors `(v1, v2)` of the commuting part
    /// `v1 (x) 1 + 1 (x) v2` of the conjugated Hamiltonian; for cross-class
    /// inputs this is the whole generator.
    pub fn conjugated_blocks(&self) -> (Su2Vector, Su2Vector) {
        (left_block_vector(self), right_block_vector(self))
    }
}

/// How an evolution operator was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactCross,
    ExactCheckerboard,
    ApproxFourFactor,
    Symmetrized,
    Oracle,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ExactCross => "exact-cross",
            Method::ExactCheckerboard => "exact-checkerboard",
            Method::ApproxFourFactor => "approx",
            Method::Symmetrized => "symmetrized",
            Method::Oracle => "oracle",
        }
    }
}

/// Evolution operator together with how it was obtained and how far it sits
/// from the oracle.
#[derive(Clone, Copy, Debug)]
pub struct EvolutionReport {
    pub t: f64,
    pub u: CMat4,
    pub method: Method,
    pub error_vs_oracle: f64,
}

impl EvolutionReport {
    pub fn unitarity_defect(&self) -> f64 {
        (self.u.dagger() * self.u).frobenius_distance(&CMat4::identity())
    }
}

/// `e^{-itH}` by Hermitian eigendecomposition; the validation reference for
/// every closed form below.
pub fn evolve_oracle(h: &Hamiltonian4, t: f64) -> CMat4 {
    expm_hermitian(ExpSign::MinusI, &h.to_matrix(), t)
        .expect("materialized Hamiltonian4 is Hermitian by construction")
}

/// su(2) vector of the first commuting factor of `R^dagger H R`.
fn left_block_vector(h: &Hamiltonian4) -> Su2Vector {
    Su2Vector::new((h.h13 - h.h24) / 2.0, 0.0, (h.h14 + h.h23) / 2.0)
}

/// su(2) vector of the second commuting factor of `R^dagger H R`.
fn right_block_vector(h: &Hamiltonian4) -> Su2Vector {
    Su2Vector::new(0.0, (h.h13 + h.h24) / 2.0, (h.h14 - h.h23) / 2.0)
}

/// `R inner R^dagger`, with the identity passed through untouched so that
/// vanishing factors stay exactly the identity (the rounding in `R R^dagger`
/// would otherwise leak into `U_i(0)`).
fn conjugate_by_magic(inner: &CMat4) -> CMat4 {
    if *inner == CMat4::identity() {
        return *inner;
    }
    let r = magic_matrix();
    r * *inner * r.dagger()
}

fn factor_u1(h: &Hamiltonian4, t: f64) -> CMat4 {
    conjugate_by_magic(&tensor(&exp_su2(&(left_block_vector(h) * -t)), &ID2))
}

fn factor_u2(h: &Hamiltonian4, t: f64) -> CMat4 {
    conjugate_by_magic(&tensor(&ID2, &exp_su2(&(right_block_vector(h) * -t))))
}

/// `e^{i theta (s_i (x) s_j)} = cos(theta) 1 + i sin(theta) s_i (x) s_j`,
/// valid because every `s_i (x) s_j` squares to the identity.
fn exp_tensor_pauli(theta: f64, a: &CMat2, b: &CMat2) -> CMat4 {
    if theta == 0.0 {
        return CMat4::identity();
    }
    CMat4::identity() * theta.cos() + tensor(a, b) * Complex::new(0.0, theta.sin())
}

fn factor_u3(h: &Hamiltonian4, t: f64) -> CMat4 {
    let theta = -t * (h.h12 + h.h34) / 2.0;
    conjugate_by_magic(&exp_tensor_pauli(theta, &SIGMA3, &SIGMA2))
}

fn factor_u4(h: &Hamiltonian4, t: f64) -> CMat4 {
    let theta = t * (h.h12 - h.h34) / 2.0;
    conjugate_by_magic(&exp_tensor_pauli(theta, &SIGMA1, &SIGMA3))
}

/// Exact `e^{-itH}` for the cross class (`h12 = h34 = 0`): the conjugated
/// Hamiltonian splits into two commuting su(2) blocks, each exponentiated in
/// closed form.
pub fn evolve_exact_cross(h: &Hamiltonian4, t: f64) -> Result<CMat4, EvolveError> {
    if !h.is_cross() {
        return Err(EvolveError::NotCrossClass);
    }
    Ok(factor_u1(h, t) * factor_u2(h, t))
}

/// Exact `e^{-itH}` for the checkerboard class (`h13 = h24 = 0`): swap
/// conjugation turns it into a cross-class problem, so each factor is wrapped
/// in `S R ... R^dagger S`.
pub fn evolve_exact_checkerboard(h: &Hamiltonian4, t: f64) -> Result<CMat4, EvolveError> {
    if !h.is_checkerboard() {
        return Err(EvolveError::NotCheckerboardClass);
    }
    let s = swap_matrix();
    let swapped = h.swap_conjugated();
    let u1 = s * factor_u1(&swapped, t) * s;
    let u2 = s * factor_u2(&swapped, t) * s;
    Ok(u1 * u2)
}

/// Four-factor closed-form approximation `U1 U2 U3 U4` for the generic class.
/// Exact on the cross class; otherwise the defect is the usual second-order
/// splitting error.
pub fn evolve_approx(h: &Hamiltonian4, t: f64) -> CMat4 {
    factor_u1(h, t) * factor_u2(h, t) * factor_u3(h, t) * factor_u4(h, t)
}

/// Frobenius distance between the four-factor approximation and the oracle.
pub fn approx_error(h: &Hamiltonian4, t: f64) -> f64 {
    evolve_approx(h, t).frobenius_distance(&evolve_oracle(h, t))
}

/// Symmetrized splitting `U1(t/2) U2(t/2) U3(t) U4(t) U2(t/2) U1(t/2)`,
/// trading two extra factors for third-order accuracy. Not one of the paper
/// factorizations above; provided for error-order comparisons.
pub fn evolve_symmetrized(h: &Hamiltonian4, t: f64) -> CMat4 {
    let half = t / 2.0;
    factor_u1(h, half)
        * factor_u2(h, half)
        * factor_u3(h, t)
        * factor_u4(h, t)
        * factor_u2(h, half)
        * factor_u1(h, half)
}

/// Preferred method for a Hamiltonian: an exact factorization when a class
/// predicate holds (checkerboard wins the H = 0 overlap), else the
/// four-factor approximation.
pub fn select_method(h: &Hamiltonian4) -> Method {
    if h.is_checkerboard() {
        Method::ExactCheckerboard
    } else if h.is_cross() {
        Method::ExactCross
    } else {
        Method::ApproxFourFactor
    }
}

/// Evaluate `e^{-itH}` with the given method and report the distance to the
/// oracle.
pub fn evolve_report(h: &Hamiltonian4, t: f64, method: Method) -> Result<EvolutionReport, EvolveError> {
    let u = match method {
        Method::ExactCross => evolve_exact_cross(h, t)?,
        Method::ExactCheckerboard => evolve_exact_checkerboard(h, t)?,
        Method::ApproxFourFactor => evolve_approx(h, t),
        Method::Symmetrized => evolve_symmetrized(h, t),
        Method::Oracle => evolve_oracle(h, t),
    };
    let error_vs_oracle = match method {
        Method::Oracle => 0.0,
        _ => u.frobenius_distance(&evolve_oracle(h, t)),
    };
    Ok(EvolutionReport { t, u, method, error_vs_oracle })
}
