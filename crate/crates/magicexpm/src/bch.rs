//! Closed-form Baker-Campbell-Hausdorff composition.
//!
//! For su(2) the whole series sums to `Z = alpha X + beta Y + gamma (i/2)[X, Y]`
//! with scalar coefficients built from the vector norms and inner product. A
//! checkerboard-sparsity class of real symmetric 4x4 matrices splits (after
//! swap and magic-basis conjugation) into two independent su(2) problems, so
//! the same kernel composes `e^{iA} e^{iB}` there in closed form.

use std::fmt;

use crate::pauli::{cross, dot, sinc, Su2Vector};
use crate::smallmat::{commutator4, C64, CMat4};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BchError {
    /// The composed rotation left the principal branch where the closed-form
    /// coefficients are valid. For the SU(4)-class composition, `pair`
    /// identifies which of the two su(2) sub-problems failed (1 or 2).
    OutOfDomain { pair: Option<u8> },
    /// `bch_series` supports truncation orders 1 through 4.
    UnsupportedOrder(u32),
}

impl fmt::Display for BchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BchError::OutOfDomain { pair: Some(p) } => write!(
                f,
                "composition outside the closed-form domain (su(2) pair {p})"
            ),
            BchError::OutOfDomain { pair: None } => {
                write!(f, "composition outside the closed-form domain")
            }
            BchError::UnsupportedOrder(n) => {
                write!(f, "unsupported series order {n} (supported: 1..=4)")
            }
        }
    }
}

impl std::error::Error for BchError {}

/// The scalar data of one su(2) composition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BchCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rho: f64,
}

/// Slack beyond which a computed `rho^2 > 1` stops being treated as rounding
/// and becomes a domain error. `rho` is the sine of the composed rotation
/// angle, so values above one can only come from floating-point noise.
const RHO_SLACK: f64 = 1e-9;

/// Slack on the branch test below: the composed angle may sit exactly on
/// pi/2, where the cosine is a rounding-level negative number.
const BRANCH_SLACK: f64 = 1e-12;

/// Closed-form coefficients for `e^{iX} e^{iY} = e^{iZ}`:
///
/// ```text
/// alpha = (asin(rho)/rho) sin|x| cos|y| / |x|
/// beta  = (asin(rho)/rho) cos|x| sin|y| / |y|
/// gamma = (asin(rho)/rho) sin|x| sin|y| / (|x||y|)
/// rho^2 = sin^2|x| cos^2|y| + sin^2|y|
///         - (sin|x| sin|y| / (|x||y|))^2 (x.y)^2
///         + 2 (sin|x| cos|x| sin|y| cos|y| / (|x||y|)) (x.y)
/// ```
///
/// All `sin(r)/r` ratios are evaluated as sinc so the `|x| -> 0`, `|y| -> 0`
/// and `rho -> 0` limits are regular. `rho` is `|sin|z||` of the composed
/// rotation and its cosine partner `w = cos|x| cos|y| - sinc|x| sinc|y| (x.y)`
/// satisfies `w^2 + rho^2 = 1`, so `asin(rho)` is evaluated as
/// `atan2(rho, w)`, which stays fully accurate at `rho = 1` where asin alone
/// loses half the significant digits. The formula is valid only on the
/// principal branch `w >= 0`; `w < 0` is the out-of-domain signal.
pub fn su2_bch_coeffs(x: &Su2Vector, y: &Su2Vector) -> Result<BchCoefficients, BchError> {
    let rx = x.norm();
    let ry = y.norm();
    let (sx, cx) = rx.sin_cos();
    let (sy, cy) = ry.sin_cos();
    let sincx = sinc(rx);
    let sincy = sinc(ry);
    let d = dot(x, y);

    let mut rho2 = sx * sx * cy * cy + sy * sy - sincx * sincx * sincy * sincy * d * d
        + 2.0 * sincx * cx * sincy * cy * d;
    if rho2 > 1.0 + RHO_SLACK {
        return Err(BchError::OutOfDomain { pair: None });
    }
    rho2 = rho2.clamp(0.0, 1.0);
    let rho = rho2.sqrt();

    let w = cx * cy - sincx * sincy * d;
    if w < -BRANCH_SLACK {
        return Err(BchError::OutOfDomain { pair: None });
    }

    let scale = if rho < 1e-6 {
        // w is then 1 up to rounding; asin(rho)/rho by Taylor expansion.
        1.0 + rho2 / 6.0 + 3.0 * rho2 * rho2 / 40.0
    } else {
        rho.atan2(w) / rho
    };
    Ok(BchCoefficients {
        alpha: scale * sincx * cy,
        beta: scale * sincy * cx,
        gamma: scale * sincx * sincy,
        rho,
    })
}

/// The summed su(2) BCH series in vector form: the `z` with
/// `exp_su2(x) exp_su2(y) = exp_su2(z)`, namely
/// `z = alpha x + beta y - gamma (x cross y)`.
///
/// The commutator term enters as `+gamma (i/2)[X, Y]` at matrix level and
/// `(i/2)[X, Y]` corresponds to `-(x cross y)`, hence the minus sign.
pub fn su2_bch(x: &Su2Vector, y: &Su2Vector) -> Result<Su2Vector, BchError> {
    let k = su2_bch_coeffs(x, y)?;
    Ok(*x * k.alpha + *y * k.beta - cross(x, y) * k.gamma)
}

/// Real symmetric 4x4 matrix with the checkerboard sparsity pattern: zero
/// diagonal and zero (1,3), (2,4) entries. `f1, f2, f3, f4` sit at positions
/// (1,2), (2,3), (3,4), (1,4) in 1-indexed notation.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CheckerboardSym {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

impl CheckerboardSym {
    pub fn new(f1: f64, f2: f64, f3: f64, f4: f64) -> Self {
        Self { f1, f2, f3, f4 }
    }

    pub fn to_matrix(&self) -> CMat4 {
        CMat4::from_real([
            [0.0, self.f1, 0.0, self.f4],
            [self.f1, 0.0, self.f2, 0.0],
            [0.0, self.f2, 0.0, self.f3],
            [self.f4, 0.0, self.f3, 0.0],
        ])
    }

    /// The two su(2) vectors of `R^dagger (S A S) R = a1 (x) 1 + 1 (x) a2`.
    pub fn su2_parts(&self) -> (Su2Vector, Su2Vector) {
        (
            Su2Vector::new((self.f1 - self.f3) / 2.0, 0.0, (self.f4 + self.f2) / 2.0),
            Su2Vector::new(0.0, (self.f1 + self.f3) / 2.0, (self.f4 - self.f2) / 2.0),
        )
    }
}

/// Result of the SU(4)-class composition. The closure pattern is built in:
/// the diagonal is zero, entries (1,2), (1,4), (2,3), (3,4) are real and
/// entries (1,3), (2,4) are purely imaginary, stored by their imaginary
/// parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BchResult {
    pub e12: f64,
    pub e14: f64,
    pub e23: f64,
    pub e34: f64,
    /// Imaginary part of the (1,3) entry.
    pub e13_im: f64,
    /// Imaginary part of the (2,4) entry.
    pub e24_im: f64,
}

impl BchResult {
    /// Materialize the Hermitian matrix.
    pub fn to_matrix(&self) -> CMat4 {
        let i = C64::new(0.0, 1.0);
        let mut m = CMat4::zero();
        m[(0, 1)] = C64::new(self.e12, 0.0);
        m[(0, 2)] = i * self.e13_im;
        m[(0, 3)] = C64::new(self.e14, 0.0);
        m[(1, 2)] = C64::new(self.e23, 0.0);
        m[(1, 3)] = i * self.e24_im;
        m[(2, 3)] = C64::new(self.e34, 0.0);
        for r in 0..4 {
            for c in (r + 1)..4 {
                m[(c, r)] = m[(r, c)].conj();
            }
        }
        m
    }
}

/// Closed-form `BCH(A, B)` for the checkerboard class: the Hermitian matrix
/// with `e^{iA} e^{iB} = e^{i BCH(A,B)}`, assembled entrywise from the two
/// su(2) compositions.
pub fn su4_bch(a: &CheckerboardSym, b: &CheckerboardSym) -> Result<BchResult, BchError> {
    let (a1, a2) = a.su2_parts();
    let (b1, b2) = b.su2_parts();
    let k1 = su2_bch_coeffs(&a1, &b1).map_err(|_| BchError::OutOfDomain { pair: Some(1) })?;
    let k2 = su2_bch_coeffs(&a2, &b2).map_err(|_| BchError::OutOfDomain { pair: Some(2) })?;

    let fm = (a.f1 - a.f3) / 2.0;
    let fp = (a.f1 + a.f3) / 2.0;
    let fq = (a.f4 + a.f2) / 2.0;
    let fr = (a.f4 - a.f2) / 2.0;
    let gm = (b.f1 - b.f3) / 2.0;
    let gp = (b.f1 + b.f3) / 2.0;
    let gq = (b.f4 + b.f2) / 2.0;
    let gr = (b.f4 - b.f2) / 2.0;

    Ok(BchResult {
        e12: k1.alpha * fm + k1.beta * gm + k2.alpha * fp + k2.beta * gp,
        e13_im: k1.gamma * (fm * gq - fq * gm) - k2.gamma * (fp * gr - fr * gp),
        e14: k1.alpha * fq + k1.beta * gq + k2.alpha * fr + k2.beta * gr,
        e23: k1.alpha * fq + k1.beta * gq - k2.alpha * fr - k2.beta * gr,
        e24_im: k1.gamma * (fm * gq - fq * gm) + k2.gamma * (fp * gr - fr * gp),
        e34: -k1.alpha * fm - k1.beta * gm + k2.alpha * fp + k2.beta * gp,
    })
}

/// Truncated BCH series for `e^a e^b = e^{bch_series(a, b, order)}`:
///
/// ```text
/// a + b + (1/2)[a,b] + (1/12)([a,[a,b]] + [[a,b],b]) - (1/24)[b,[a,[a,b]]]
/// ```
///
/// kept to the requested order in the joint grading of `a` and `b`. Meant as
/// a small-norm cross-check for the closed forms.
pub fn bch_series(a: &CMat4, b: &CMat4, order: u32) -> Result<CMat4, BchError> {
    if !(1..=4).contains(&order) {
        return Err(BchError::UnsupportedOrder(order));
    }
    let mut z = *a + *b;
    if order >= 2 {
        let ab = commutator4(a, b);
        z = z + ab * 0.5;
        if order >= 3 {
            let aab = commutator4(a, &ab);
            let abb = commutator4(&ab, b);
            z = z + (aab + abb) * (1.0 / 12.0);
            if order >= 4 {
                z = z - commutator4(b, &aab) * (1.0 / 24.0);
            }
        }
    }
    Ok(z)
}
