//! Command-line interface: JSON in, JSON/CSV out.
//!
//! This module holds the input schemas, the output documents and their
//! builders; argument parsing and process exit codes live in [`run`] behind
//! the `cli` feature so library consumers (the browser demo in particular)
//! can reuse the document builders without the terminal machinery.

use std::fmt;
use std::io;

use serde::{Deserialize, Serialize};

use crate::bch::{su2_bch_coeffs, su4_bch, BchError, CheckerboardSym};
use crate::evolve::{evolve_report, select_method, Hamiltonian4, Method};
use crate::magic::{
    conjugate_hamiltonian, conjugate_traceless_symmetric, magic_matrix, TensorDecomposition,
};
use crate::oracle::expm_series;
use crate::smallmat::{C64, CMat4};
use crate::verify::fit_log_log;

#[cfg(feature = "cli")]
mod run;
#[cfg(feature = "cli")]
pub use run::run;

/// Default reporting tolerance; the `MAGICEXPM_TOL` environment variable
/// overrides it for the `ok` flags in emitted documents, never for the
/// closed-form math itself.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// CLI failure with its exit code taxonomy:
/// 2 parse, 3 invariant, 4 class, 5 domain, 64 usage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Invariant(String),
    Class(String),
    Domain(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Class(_) => 4,
            CliError::Domain(_) => 5,
            CliError::Usage(_) => 64,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
            CliError::Class(m) => write!(f, "class error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Input document for a Hamiltonian: the six couplings (absent keys default
/// to zero) and, for decompose only, an optional traceless diagonal.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    #[serde(default)]
    pub h12: f64,
    #[serde(default)]
    pub h13: f64,
    #[serde(default)]
    pub h14: f64,
    #[serde(default)]
    pub h23: f64,
    #[serde(default)]
    pub h24: f64,
    #[serde(default)]
    pub h34: f64,
    #[serde(default)]
    pub diagonal: Option<[f64; 4]>,
}

impl HamiltonianSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let couplings = [self.h12, self.h13, self.h14, self.h23, self.h24, self.h34];
        if couplings.iter().any(|h| !h.is_finite()) {
            return Err(CliError::Invariant("couplings must be finite".into()));
        }
        if let Some(d) = self.diagonal {
            if d.iter().any(|v| !v.is_finite()) {
                return Err(CliError::Invariant("diagonal must be finite".into()));
            }
            let trace: f64 = d.iter().sum();
            if trace.abs() > 1e-10 {
                return Err(CliError::Invariant(format!(
                    "diagonal must be traceless to 1e-10 (sum = {trace:e})"
                )));
            }
        }
        Ok(())
    }

    pub fn reject_diagonal(&self, command: &str) -> Result<(), CliError> {
        if self.diagonal.is_some() {
            return Err(CliError::Invariant(format!(
                "{command} takes a zero-diagonal Hamiltonian; the diagonal field is for decompose only"
            )));
        }
        Ok(())
    }

    pub fn hamiltonian(&self) -> Hamiltonian4 {
        Hamiltonian4 {
            h12: self.h12,
            h13: self.h13,
            h14: self.h14,
            h23: self.h23,
            h24: self.h24,
            h34: self.h34,
        }
    }
}

/// Requested evolution method; `Auto` resolves from the class predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    ExactCross,
    ExactCheckerboard,
    Approx,
    Symmetrized,
    Oracle,
}

impl MethodChoice {
    pub const ALL: [MethodChoice; 6] = [
        MethodChoice::Auto,
        MethodChoice::ExactCross,
        MethodChoice::ExactCheckerboard,
        MethodChoice::Approx,
        MethodChoice::Symmetrized,
        MethodChoice::Oracle,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            MethodChoice::Auto => "auto",
            MethodChoice::ExactCross => "exact-cross",
            MethodChoice::ExactCheckerboard => "exact-checkerboard",
            MethodChoice::Approx => "approx",
            MethodChoice::Symmetrized => "symmetrized",
            MethodChoice::Oracle => "oracle",
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|m| m.label() == text)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown method '{text}' (expected one of auto, exact-cross, \
                     exact-checkerboard, approx, symmetrized, oracle)"
                ))
            })
    }

    /// Resolve against a Hamiltonian; forcing an exact method on an
    /// out-of-class input is a class error.
    pub fn resolve(&self, h: &Hamiltonian4) -> Result<Method, CliError> {
        match self {
            MethodChoice::Auto => Ok(select_method(h)),
            MethodChoice::ExactCross => {
                if h.is_cross() {
                    Ok(Method::ExactCross)
                } else {
                    Err(CliError::Class(
                        "exact-cross requires h12 = h34 = 0".into(),
                    ))
                }
            }
            MethodChoice::ExactCheckerboard => {
                if h.is_checkerboard() {
                    Ok(Method::ExactCheckerboard)
                } else {
                    Err(CliError::Class(
                        "exact-checkerboard requires h13 = h24 = 0".into(),
                    ))
                }
            }
            MethodChoice::Approx => Ok(Method::ApproxFourFactor),
            MethodChoice::Symmetrized => Ok(Method::Symmetrized),
            MethodChoice::Oracle => Ok(Method::Oracle),
        }
    }
}

fn basis_label(i: usize, j: usize) -> String {
    const PART: [&str; 4] = ["1", "sigma1", "sigma2", "sigma3"];
    format!("{}*{}", PART[i], PART[j])
}

fn matrix_entries(m: &CMat4) -> [[[f64; 2]; 4]; 4] {
    let mut out = [[[0.0; 2]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = [m[(i, j)].re, m[(i, j)].im];
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassTags {
    pub is_cross: bool,
    pub is_checkerboard: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientEntry {
    pub basis: String,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VectorPair {
    pub a1: [f64; 3],
    pub a2: [f64; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeDoc {
    pub class: ClassTags,
    /// All fifteen traceless-basis coefficients in row-major (i, j) order.
    pub coefficients: Vec<CoefficientEntry>,
    /// su(2) halves of the commuting block of the conjugated Hamiltonian.
    pub cross_vectors: VectorPair,
    /// Same vectors after swap conjugation, present for checkerboard inputs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkerboard_vectors: Option<VectorPair>,
    pub reconstruction_residual: f64,
    pub reconstruction_ok: bool,
    pub tolerance: f64,
}

pub fn decompose_doc(spec: &HamiltonianSpec, tol: f64) -> Result<DecomposeDoc, CliError> {
    spec.validate()?;
    let h = spec.hamiltonian();
    let r = magic_matrix();

    let (decomposition, direct): (TensorDecomposition, CMat4) = match spec.diagonal {
        None => (
            conjugate_hamiltonian(&h),
            r.dagger() * h.to_matrix() * r,
        ),
        Some(d) => {
            let mut k = h.to_matrix();
            for (idx, v) in d.into_iter().enumerate() {
                k[(idx, idx)] = C64::new(v, 0.0);
            }
            let dec = conjugate_traceless_symmetric(&k)
                .map_err(|e| CliError::Invariant(e.to_string()))?;
            (dec, r.dagger() * k * r)
        }
    };
    let residual = decomposition.reconstruct().frobenius_distance(&direct);

    let mut coefficients = Vec::with_capacity(15);
    for i in 0..4 {
        for j in 0..4 {
            if (i, j) == (0, 0) {
                continue;
            }
            coefficients.push(CoefficientEntry {
                basis: basis_label(i, j),
                i,
                j,
                value: decomposition.coefficient(i, j),
            });
        }
    }

    let (c1, c2) = h.conjugated_blocks();
    let checkerboard_vectors = if h.is_checkerboard() {
        let (s1, s2) = h.swap_conjugated().conjugated_blocks();
        Some(VectorPair { a1: s1.as_array(), a2: s2.as_array() })
    } else {
        None
    };

    Ok(DecomposeDoc {
        class: ClassTags {
            is_cross: h.is_cross(),
            is_checkerboard: h.is_checkerboard(),
        },
        coefficients,
        cross_vectors: VectorPair { a1: c1.as_array(), a2: c2.as_array() },
        checkerboard_vectors,
        reconstruction_residual: residual,
        reconstruction_ok: residual <= tol,
        tolerance: tol,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolveDoc {
    pub t: f64,
    pub method_requested: String,
    pub method_used: String,
    /// Row-major entries of `U(t)` as `[re, im]` pairs.
    pub u: [[[f64; 2]; 4]; 4],
    pub unitarity_defect: f64,
    pub error_vs_oracle: f64,
    pub unitary_ok: bool,
    pub tolerance: f64,
}

pub fn evolve_doc(
    spec: &HamiltonianSpec,
    t: f64,
    choice: MethodChoice,
    tol: f64,
) -> Result<EvolveDoc, CliError> {
    spec.validate()?;
    spec.reject_diagonal("evolve")?;
    if !t.is_finite() {
        return Err(CliError::Invariant("t must be finite".into()));
    }
    let h = spec.hamiltonian();
    let method = choice.resolve(&h)?;
    let report = evolve_report(&h, t, method).expect("class membership already checked");
    let defect = report.unitarity_defect();
    Ok(EvolveDoc {
        t,
        method_requested: choice.label().to_string(),
        method_used: method.label().to_string(),
        u: matrix_entries(&report.u),
        unitarity_defect: defect,
        error_vs_oracle: report.error_vs_oracle,
        unitary_ok: defect <= tol,
        tolerance: tol,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BchEntry {
    /// 1-indexed position, e.g. "12".
    pub position: String,
    /// "real" or "imaginary" per the closure pattern.
    pub kind: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientSet {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BchDoc {
    pub entries: Vec<BchEntry>,
    pub pair1: CoefficientSet,
    pub pair2: CoefficientSet,
    /// The composed Hermitian generator as `[re, im]` pairs.
    pub matrix: [[[f64; 2]; 4]; 4],
    /// `|e^{iA} e^{iB} - e^{i BCH(A,B)}|_F` measured with the series oracle.
    pub residual: f64,
    pub residual_ok: bool,
    pub tolerance: f64,
}

fn checkerboard_input(spec: &HamiltonianSpec, name: &str) -> Result<CheckerboardSym, CliError> {
    spec.validate()?;
    if spec.diagonal.is_some() {
        return Err(CliError::Invariant(format!(
            "bch input {name} must not carry a diagonal"
        )));
    }
    let h = spec.hamiltonian();
    if !h.is_checkerboard() {
        return Err(CliError::Class(format!(
            "bch input {name} must be checkerboard-class (h13 = h24 = 0)"
        )));
    }
    Ok(CheckerboardSym::new(h.h12, h.h23, h.h34, h.h14))
}

pub fn bch_doc(
    a_spec: &HamiltonianSpec,
    b_spec: &HamiltonianSpec,
    tol: f64,
) -> Result<BchDoc, CliError> {
    let a = checkerboard_input(a_spec, "A")?;
    let b = checkerboard_input(b_spec, "B")?;

    let result = su4_bch(&a, &b).map_err(|e| match e {
        BchError::OutOfDomain { pair } => CliError::Domain(match pair {
            Some(p) => format!("su(2) pair {p} left the closed-form domain"),
            None => "composition left the closed-form domain".to_string(),
        }),
        other => CliError::Domain(other.to_string()),
    })?;

    let (a1, a2) = a.su2_parts();
    let (b1, b2) = b.su2_parts();
    let coeff = |x, y| {
        let k = su2_bch_coeffs(x, y).expect("su4_bch succeeded on the same pair");
        CoefficientSet { alpha: k.alpha, beta: k.beta, gamma: k.gamma, rho: k.rho }
    };

    let i = C64::new(0.0, 1.0);
    let lhs = expm_series(&(a.to_matrix() * i)) * expm_series(&(b.to_matrix() * i));
    let rhs = expm_series(&(result.to_matrix() * i));
    let residual = lhs.frobenius_distance(&rhs);

    let entries = vec![
        BchEntry { position: "12".into(), kind: "real".into(), value: result.e12 },
        BchEntry { position: "13".into(), kind: "imaginary".into(), value: result.e13_im },
        BchEntry { position: "14".into(), kind: "real".into(), value: result.e14 },
        BchEntry { position: "23".into(), kind: "real".into(), value: result.e23 },
        BchEntry { position: "24".into(), kind: "imaginary".into(), value: result.e24_im },
        BchEntry { position: "34".into(), kind: "real".into(), value: result.e34 },
    ];

    Ok(BchDoc {
        entries,
        pair1: coeff(&a1, &b1),
        pair2: coeff(&a2, &b2),
        matrix: matrix_entries(&result.to_matrix()),
        residual,
        residual_ok: residual <= tol.max(1e-10),
        tolerance: tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

impl SweepScale {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "linear" => Ok(SweepScale::Linear),
            "log" => Ok(SweepScale::Log),
            other => Err(CliError::Usage(format!(
                "unknown scale '{other}' (expected linear or log)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points: u32,
    pub scale: SweepScale,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.t_min.is_finite() || !self.t_max.is_finite() {
            return Err(CliError::Invariant("sweep bounds must be finite".into()));
        }
        if self.points < 2 {
            return Err(CliError::Invariant("points must be at least 2".into()));
        }
        if self.t_min >= self.t_max {
            return Err(CliError::Invariant("t_min must be below t_max".into()));
        }
        if self.scale == SweepScale::Log && self.t_min <= 0.0 {
            return Err(CliError::Invariant("log scale requires t_min > 0".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points as usize;
        let frac = |k: usize| k as f64 / (n - 1) as f64;
        match self.scale {
            SweepScale::Linear => (0..n)
                .map(|k| self.t_min + (self.t_max - self.t_min) * frac(k))
                .collect(),
            SweepScale::Log => {
                let (lo, hi) = (self.t_min.ln(), self.t_max.ln());
                (0..n).map(|k| (lo + (hi - lo) * frac(k)).exp()).collect()
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub t: f64,
    pub method: &'static str,
    pub error_vs_oracle: f64,
    pub unitarity_defect: f64,
}

/// One row per (t, method); t ascending, methods in request order.
pub fn sweep_rows(
    spec: &HamiltonianSpec,
    sweep: &SweepSpec,
    methods: &[MethodChoice],
) -> Result<Vec<SweepRow>, CliError> {
    spec.validate()?;
    spec.reject_diagonal("sweep")?;
    sweep.validate()?;
    if methods.is_empty() {
        return Err(CliError::Usage("at least one method is required".into()));
    }
    let h = spec.hamiltonian();
    let resolved: Vec<(MethodChoice, Method)> = methods
        .iter()
        .map(|c| c.resolve(&h).map(|m| (*c, m)))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(sweep.points as usize * methods.len());
    for t in sweep.grid() {
        for (choice, method) in &resolved {
            let report = evolve_report(&h, t, *method).expect("class membership already checked");
            rows.push(SweepRow {
                t,
                method: choice.label(),
                error_vs_oracle: report.error_vs_oracle,
                unitarity_defect: report.unitarity_defect(),
            });
        }
    }
    Ok(rows)
}

/// Render the CSV stream; `--fit` appends `#fit` comment lines with the
/// least-squares log-log slope per method.
pub fn sweep_csv(rows: &[SweepRow], with_fit: bool) -> String {
    let mut out = String::from("t,method,error_vs_oracle,unitarity_defect\n");
    for row in rows {
        out.push_str(&format!(
            "{:.16e},{},{:.16e},{:.16e}\n",
            row.t, row.method, row.error_vs_oracle, row.unitarity_defect
        ));
    }
    if with_fit {
        let mut seen: Vec<&'static str> = Vec::new();
        for row in rows {
            if !seen.contains(&row.method) {
                seen.push(row.method);
            }
        }
        for method in seen {
            let samples: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.method == method)
                .map(|r| (r.t, r.error_vs_oracle))
                .collect();
            let (slope, intercept) = fit_log_log(&samples);
            out.push_str(&format!(
                "#fit method={method} slope={slope:.16e} intercept={intercept:.16e}\n"
            ));
        }
    }
    out
}

/// JSON serializer printing every float with 17 significant digits, which is
/// lossless for f64.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("document serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
