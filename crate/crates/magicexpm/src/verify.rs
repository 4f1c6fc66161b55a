//! Seeded self-verification: every structural claim the library rests on,
//! re-checked against the brute-force oracles with reproducible random data.
//!
//! The generator is a fixed SplitMix64 so a given seed produces the same
//! byte-for-byte report on every run and platform; nothing here may depend on
//! timing or global state.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::bch::{su2_bch, su4_bch, CheckerboardSym};
use crate::evolve::{
    approx_error, evolve_exact_checkerboard, evolve_exact_cross, evolve_oracle,
    evolve_symmetrized, Hamiltonian4,
};
use crate::magic::{
    algebra_map, conjugate_hamiltonian, conjugate_traceless_symmetric, group_map, hodge_star,
    inverse_algebra_map, magic_matrix, So4Element, SYMMETRIC_SECTOR,
};
use crate::oracle::{expm_hermitian, expm_series, jacobi_hermitian, logm_unitary, ExpSign};
use crate::pauli::{exp_su2, Su2Vector};
use crate::smallmat::{tensor, C64, CMat4, ID2};

struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 significant bits.
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    fn su2_vector(&mut self, max: f64) -> Su2Vector {
        Su2Vector::new(
            self.uniform(-max, max),
            self.uniform(-max, max),
            self.uniform(-max, max),
        )
    }

    /// Uniform in the closed ball of the given radius.
    fn su2_ball(&mut self, radius: f64) -> Su2Vector {
        loop {
            let v = self.su2_vector(radius);
            if v.norm() <= radius {
                return v;
            }
        }
    }

    fn hamiltonian(&mut self, max: f64) -> Hamiltonian4 {
        Hamiltonian4 {
            h12: self.uniform(-max, max),
            h13: self.uniform(-max, max),
            h14: self.uniform(-max, max),
            h23: self.uniform(-max, max),
            h24: self.uniform(-max, max),
            h34: self.uniform(-max, max),
        }
    }

    fn checkerboard_sym(&mut self, max: f64) -> CheckerboardSym {
        CheckerboardSym::new(
            self.uniform(-max, max),
            self.uniform(-max, max),
            self.uniform(-max, max),
            self.uniform(-max, max),
        )
    }
}

struct SuiteOutcome {
    name: &'static str,
    pass: u32,
    fail: u32,
    counterexample: Option<Value>,
}

fn run_suite<F>(name: &'static str, trials: u32, mut check: F) -> SuiteOutcome
where
    F: FnMut(u32) -> Result<(), Value>,
{
    let mut outcome = SuiteOutcome {
        name,
        pass: 0,
        fail: 0,
        counterexample: None,
    };
    for trial in 0..trials {
        match check(trial) {
            Ok(()) => outcome.pass += 1,
            Err(detail) => {
                outcome.fail += 1;
                if outcome.counterexample.is_none() {
                    outcome.counterexample =
                        Some(json!({ "suite": name, "trial": trial, "detail": detail }));
                }
            }
        }
    }
    outcome
}

fn hvalue(h: &Hamiltonian4) -> Value {
    json!({
        "h12": h.h12, "h13": h.h13, "h14": h.h14,
        "h23": h.h23, "h24": h.h24, "h34": h.h34,
    })
}

fn fail_if(condition: bool, detail: impl FnOnce() -> Value) -> Result<(), Value> {
    if condition {
        Err(detail())
    } else {
        Ok(())
    }
}

fn makhlin_so4(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    run_suite("makhlin-so4", trials, move |_| {
        let a = rng.su2_vector(3.0);
        let b = rng.su2_vector(3.0);
        let g = group_map(&exp_su2(&a), &exp_su2(&b)).expect("exp_su2 output is special unitary");
        let imag = g.imag_norm();
        let orth = (g.transpose() * g).frobenius_distance(&CMat4::identity());
        let det = (g.det() - C64::ONE).norm();
        fail_if(imag > 1e-12 || orth > 1e-12 || det > 1e-10, || {
            json!({
                "a": a.as_array(), "b": b.as_array(),
                "imag_norm": imag, "orthogonality_defect": orth, "det_defect": det,
            })
        })
    })
}

fn algebra_correspondence(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let r = magic_matrix();
    run_suite("algebra-correspondence", trials, move |_| {
        let a = rng.su2_vector(3.0);
        let b = rng.su2_vector(3.0);
        let f = algebra_map(&a, &b);

        let inner = tensor(&a.to_matrix(), &ID2) + tensor(&ID2, &b.to_matrix());
        let direct = r.dagger() * inner * r * C64::new(0.0, 1.0);
        let mapped = f.to_matrix();
        let mut entrywise = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                entrywise = entrywise.max((direct[(i, j)] - mapped[(i, j)]).norm());
            }
        }

        let (a2, b2) = inverse_algebra_map(&f);
        let roundtrip = (a - a2).norm().max((b - b2).norm());

        let star = hodge_star(&f);
        let arr = f.as_array();
        let starr = star.as_array();
        let half = |sign: f64| {
            So4Element::new(
                (arr[0] + sign * starr[0]) / 2.0,
                (arr[1] + sign * starr[1]) / 2.0,
                (arr[2] + sign * starr[2]) / 2.0,
                (arr[3] + sign * starr[3]) / 2.0,
                (arr[4] + sign * starr[4]) / 2.0,
                (arr[5] + sign * starr[5]) / 2.0,
            )
        };
        let (_, b_of_self) = inverse_algebra_map(&half(1.0));
        let (a_of_anti, _) = inverse_algebra_map(&half(-1.0));
        let split = b_of_self.norm().max(a_of_anti.norm());
        let involution = hodge_star(&star) != f;

        fail_if(
            entrywise > 1e-13 || roundtrip > 1e-14 || split > 1e-13 || involution,
            || {
                json!({
                    "a": a.as_array(), "b": b.as_array(),
                    "entrywise": entrywise, "roundtrip": roundtrip, "hodge_split": split,
                })
            },
        )
    })
}

fn conjugated_decomposition(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let r = magic_matrix();
    run_suite("conjugated-decomposition", trials, move |_| {
        let h = rng.hamiltonian(2.0);
        let closed = conjugate_hamiltonian(&h);
        let direct = r.dagger() * h.to_matrix() * r;
        let residual_h = closed.reconstruct().frobenius_distance(&direct);

        let mut k = h.to_matrix();
        let d = [
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
        ];
        for (i, v) in [d[0], d[1], d[2], -(d[0] + d[1] + d[2])].into_iter().enumerate() {
            k[(i, i)] = C64::new(v, 0.0);
        }
        let dec = conjugate_traceless_symmetric(&k).expect("construction is symmetric traceless");
        let residual_k = dec
            .reconstruct()
            .frobenius_distance(&(r.dagger() * k * r));
        let mut complement = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) != (0, 0) && !SYMMETRIC_SECTOR.contains(&(i, j)) {
                    complement = complement.max(dec.coefficient(i, j).abs());
                }
            }
        }

        fail_if(
            residual_h > 1e-12 || residual_k > 1e-12 || complement > 1e-12,
            || {
                json!({
                    "hamiltonian": hvalue(&h), "diagonal": [d[0], d[1], d[2]],
                    "residual_h": residual_h, "residual_k": residual_k,
                    "complement_sector": complement,
                })
            },
        )
    })
}

fn exact_cross_oracle(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    run_suite("exact-cross-oracle", trials, move |_| {
        let h = Hamiltonian4 {
            h13: rng.uniform(-2.0, 2.0),
            h14: rng.uniform(-2.0, 2.0),
            h23: rng.uniform(-2.0, 2.0),
            h24: rng.uniform(-2.0, 2.0),
            ..Default::default()
        };
        let t = rng.uniform(-10.0, 10.0);
        let u = evolve_exact_cross(&h, t).expect("cross-class by construction");
        let err = u.frobenius_distance(&evolve_oracle(&h, t));
        fail_if(err > 1e-11, || {
            json!({ "hamiltonian": hvalue(&h), "t": t, "error": err })
        })
    })
}

fn exact_checkerboard_oracle(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    run_suite("exact-checkerboard-oracle", trials, move |_| {
        let h = Hamiltonian4 {
            h12: rng.uniform(-2.0, 2.0),
            h14: rng.uniform(-2.0, 2.0),
            h23: rng.uniform(-2.0, 2.0),
            h34: rng.uniform(-2.0, 2.0),
            ..Default::default()
        };
        let t = rng.uniform(-10.0, 10.0);
        let u = evolve_exact_checkerboard(&h, t).expect("checkerboard-class by construction");
        let err = u.frobenius_distance(&evolve_oracle(&h, t));
        fail_if(err > 1e-11, || {
            json!({ "hamiltonian": hvalue(&h), "t": t, "error": err })
        })
    })
}

/// Least-squares fit of ln(err) against ln(t); returns (slope, intercept).
/// Errors are floored at 1e-300 so exact-method zeros stay finite.
pub(crate) fn fit_log_log(samples: &[(f64, f64)]) -> (f64, f64) {
    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(t, e) in samples {
        let x = t.ln();
        let y = e.max(1e-300).ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    (slope, (sy - slope * sx) / n)
}

fn splitting_order(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let mut outcome = run_suite("splitting-order", trials, |_| {
        let h = Hamiltonian4 {
            h13: rng.uniform(-2.0, 2.0),
            h14: rng.uniform(-2.0, 2.0),
            h23: rng.uniform(-2.0, 2.0),
            h24: rng.uniform(-2.0, 2.0),
            ..Default::default()
        };
        let t = rng.uniform(-5.0, 5.0);
        let err = approx_error(&h, t);
        fail_if(err > 1e-12, || {
            json!({ "hamiltonian": hvalue(&h), "t": t, "cross_class_error": err })
        })
    });

    // Error-order fits over ten log-spaced times on a Hamiltonian whose two
    // conjugated sectors do not commute. (Couplings with h13 = h24, h14 = h23
    // and h12 = h34 — the all-ones matrix among them — sit in a commuting
    // sector where the product formula is exact and no order is measurable;
    // that exactness is checked as a third fit-stage assertion.)
    let skewed = Hamiltonian4 {
        h12: 1.0,
        h13: 0.8,
        h14: 0.6,
        h23: 0.4,
        h24: 0.2,
        h34: -0.5,
    };
    let times: Vec<f64> = (0..10)
        .map(|k| 10f64.powf(-3.0 + 2.0 * k as f64 / 9.0))
        .collect();
    let approx: Vec<(f64, f64)> = times
        .iter()
        .map(|&t| (t, approx_error(&skewed, t)))
        .collect();
    let symm: Vec<(f64, f64)> = times
        .iter()
        .map(|&t| {
            let u = evolve_symmetrized(&skewed, t);
            (t, u.frobenius_distance(&evolve_oracle(&skewed, t)))
        })
        .collect();
    let ones = Hamiltonian4 {
        h12: 1.0,
        h13: 1.0,
        h14: 1.0,
        h23: 1.0,
        h24: 1.0,
        h34: 1.0,
    };
    let commuting_error = approx_error(&ones, 1.0);
    for (value, lo, hi, label) in [
        (fit_log_log(&approx).0, 1.9, 2.1, "approx-slope"),
        (fit_log_log(&symm).0, 2.85, 3.15, "symmetrized-slope"),
        (commuting_error, 0.0, 1e-12, "commuting-sector-exactness"),
    ] {
        if value >= lo && value <= hi {
            outcome.pass += 1;
        } else {
            outcome.fail += 1;
            if outcome.counterexample.is_none() {
                outcome.counterexample = Some(json!({
                    "suite": "splitting-order",
                    "detail": { "check": label, "value": value, "expected": [lo, hi] },
                }));
            }
        }
    }
    outcome
}

fn su2_bch_oracle(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    run_suite("su2-bch-oracle", trials, move |_| {
        // Sample inside |x|, |y| <= 1 and on the principal branch; branch
        // exits are reported by su2_bch and resampled.
        let (x, y, z) = loop {
            let x = rng.su2_ball(1.0);
            let y = rng.su2_ball(1.0);
            if let Ok(z) = su2_bch(&x, &y) {
                break (x, y, z);
            }
        };
        let product = exp_su2(&x) * exp_su2(&y);
        let err = exp_su2(&z).frobenius_distance(&product);
        fail_if(err > 1e-11, || {
            json!({ "x": x.as_array(), "y": y.as_array(), "error": err })
        })
    })
}

fn su4_bch_oracle(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let i = C64::new(0.0, 1.0);
    run_suite("su4-bch-oracle", trials, move |_| {
        let a = rng.checkerboard_sym(0.5);
        let b = rng.checkerboard_sym(0.5);
        let z = su4_bch(&a, &b).expect("|f|, |g| <= 0.5 keeps both pairs on the branch");
        let lhs = expm_series(&(a.to_matrix() * i)) * expm_series(&(b.to_matrix() * i));
        let rhs = expm_series(&(z.to_matrix() * i));
        let err = lhs.frobenius_distance(&rhs);
        let m = z.to_matrix();
        let closure_broken = (0..4).any(|k| m[(k, k)] != C64::ZERO)
            || m[(0, 1)].im != 0.0
            || m[(0, 3)].im != 0.0
            || m[(1, 2)].im != 0.0
            || m[(2, 3)].im != 0.0
            || m[(0, 2)].re != 0.0
            || m[(1, 3)].re != 0.0;
        fail_if(err > 1e-10 || closure_broken, || {
            json!({
                "a": [a.f1, a.f2, a.f3, a.f4], "b": [b.f1, b.f2, b.f3, b.f4],
                "error": err, "closure_broken": closure_broken,
            })
        })
    })
}

fn oracle_consistency(seed: u64, trials: u32) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    run_suite("oracle-consistency", trials, move |_| {
        let mut m = CMat4::zero();
        for idx in 0..4 {
            for j in 0..4 {
                m[(idx, j)] = C64::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            }
        }
        let h = (m + m.dagger()) * 0.5;
        let t = rng.uniform(-5.0, 5.0);
        let via_eigen =
            expm_hermitian(ExpSign::MinusI, &h, t).expect("Hermitian by construction");
        let via_series = expm_series(&(h * C64::new(0.0, -t)));
        let route_gap = via_eigen.frobenius_distance(&via_series);

        let z = h * (0.9 / h.frobenius_norm().max(1.0));
        let u = expm_series(&(z * C64::new(0.0, 1.0)));
        let log = logm_unitary(&u).expect("exponent stays inside the branch");
        let roundtrip = expm_series(&log).frobenius_distance(&u);

        let (eig, v) = jacobi_hermitian(&h);
        let mut d = CMat4::zero();
        for k in 0..4 {
            d[(k, k)] = C64::new(eig[k], 0.0);
        }
        let eigen_residual = (v * d * v.dagger()).frobenius_distance(&h);

        fail_if(
            route_gap > 1e-11 || roundtrip > 1e-11 || eigen_residual > 1e-12,
            || {
                json!({
                    "t": t, "route_gap": route_gap,
                    "logm_roundtrip": roundtrip, "eigen_residual": eigen_residual,
                })
            },
        )
    })
}

/// Outcome of the full verification run.
pub struct VerifyReport {
    /// Per-suite lines plus a summary, deterministic for a given seed.
    pub text: String,
    pub passed: bool,
    /// First failing counterexample, if any.
    pub counterexample: Option<Value>,
}

/// Run every suite with `trials` checks each (plus the two error-order fits).
pub fn run_verify(seed: u64, trials: u32) -> VerifyReport {
    // Distinct sub-seeds per suite; the offsets are arbitrary odd constants.
    let sub = |k: u64| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(2 * k + 1);
    let outcomes = vec![
        makhlin_so4(sub(1), trials),
        algebra_correspondence(sub(2), trials),
        conjugated_decomposition(sub(3), trials),
        exact_cross_oracle(sub(4), trials),
        exact_checkerboard_oracle(sub(5), trials),
        splitting_order(sub(6), trials),
        su2_bch_oracle(sub(7), trials),
        su4_bch_oracle(sub(8), trials),
        oracle_consistency(sub(9), trials),
    ];

    let mut text = String::new();
    let mut passed_suites = 0;
    let mut counterexample = None;
    let total = outcomes.len();
    let mut checks = 0;
    for o in &outcomes {
        writeln!(text, "suite {}: pass={} fail={}", o.name, o.pass, o.fail).unwrap();
        checks += o.pass + o.fail;
        if o.fail == 0 {
            passed_suites += 1;
        } else if counterexample.is_none() {
            counterexample = o.counterexample.clone();
        }
    }
    let passed = passed_suites == total;
    writeln!(
        text,
        "verify: {passed_suites}/{total} suites passed, {checks} checks, seed={seed}, trials={trials}"
    )
    .unwrap();

    VerifyReport {
        text,
        passed,
        counterexample,
    }
}
