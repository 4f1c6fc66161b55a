//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figure of merit (run with `--nocapture` to see them).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use magicexpm::bch::{bch_series, su2_bch, su2_bch_coeffs, su4_bch, CheckerboardSym};
use magicexpm::evolve::{
    approx_error, evolve_exact_checkerboard, evolve_exact_cross, evolve_oracle,
    evolve_symmetrized, Hamiltonian4,
};
use magicexpm::magic::{
    algebra_map, group_map, hodge_star, inverse_algebra_map, magic_matrix, So4Element,
};
use magicexpm::oracle::{expm_hermitian, expm_series, logm_unitary, ExpSign};
use magicexpm::pauli::{exp_su2, Su2Vector};
use magicexpm::smallmat::{tensor, C64, CMat4, ID2};

fn su2_vector(rng: &mut ChaCha8Rng, max: f64) -> Su2Vector {
    Su2Vector::new(
        rng.random_range(-max..max),
        rng.random_range(-max..max),
        rng.random_range(-max..max),
    )
}

fn su2_ball(rng: &mut ChaCha8Rng, radius: f64) -> Su2Vector {
    loop {
        let v = su2_vector(rng, radius);
        if v.norm() <= radius {
            return v;
        }
    }
}

fn cross_hamiltonian(rng: &mut ChaCha8Rng) -> Hamiltonian4 {
    Hamiltonian4 {
        h13: rng.random_range(-2.0..2.0),
        h14: rng.random_range(-2.0..2.0),
        h23: rng.random_range(-2.0..2.0),
        h24: rng.random_range(-2.0..2.0),
        ..Default::default()
    }
}

fn checkerboard_hamiltonian(rng: &mut ChaCha8Rng, with_h14: bool) -> Hamiltonian4 {
    Hamiltonian4 {
        h12: rng.random_range(-2.0..2.0),
        h14: if with_h14 { rng.random_range(-2.0..2.0) } else { 0.0 },
        h23: rng.random_range(-2.0..2.0),
        h34: rng.random_range(-2.0..2.0),
        ..Default::default()
    }
}

fn hermitian4(rng: &mut ChaCha8Rng, max: f64) -> CMat4 {
    let mut m = CMat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = C64::new(rng.random_range(-max..max), rng.random_range(-max..max));
        }
    }
    (m + m.dagger()) * 0.5
}

fn fit_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(t, e) in samples {
        let (x, y) = (t.ln(), e.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

const ALL_ONES: Hamiltonian4 = Hamiltonian4 {
    h12: 1.0,
    h13: 1.0,
    h14: 1.0,
    h23: 1.0,
    h24: 1.0,
    h34: 1.0,
};

#[test]
fn criterion_1_makhlin_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let start = Instant::now();
    let mut max_imag = 0.0f64;
    let mut max_orth = 0.0f64;
    let mut max_det = 0.0f64;
    for _ in 0..1000 {
        let a = exp_su2(&su2_vector(&mut rng, 3.0));
        let b = exp_su2(&su2_vector(&mut rng, 3.0));
        let g = group_map(&a, &b).expect("exp_su2 factors are special unitary");
        max_imag = max_imag.max(g.imag_norm());
        max_orth =
            max_orth.max((g.transpose() * g).frobenius_distance(&CMat4::identity()));
        max_det = max_det.max((g.det() - C64::ONE).norm());
    }
    let elapsed = start.elapsed();
    assert!(max_imag < 1e-12, "imaginary residue {max_imag}");
    assert!(max_orth < 1e-12, "orthogonality defect {max_orth}");
    assert!(max_det < 1e-10, "determinant defect {max_det}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 1 (Makhlin isomorphism): PASS  imag={max_imag:.2e} orth={max_orth:.2e} \
         det={max_det:.2e} elapsed={elapsed:?}"
    );
}

#[test]
fn criterion_2_algebra_correspondence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let r = magic_matrix();
    let mut max_entry = 0.0f64;
    let mut max_roundtrip = 0.0f64;
    let mut max_split = 0.0f64;
    for _ in 0..1000 {
        let a = su2_vector(&mut rng, 3.0);
        let b = su2_vector(&mut rng, 3.0);
        let f = algebra_map(&a, &b);

        let inner = tensor(&a.to_matrix(), &ID2) + tensor(&ID2, &b.to_matrix());
        let direct = r.dagger() * inner * r * C64::new(0.0, 1.0);
        let mapped = f.to_matrix();
        for i in 0..4 {
            for j in 0..4 {
                max_entry = max_entry.max((direct[(i, j)] - mapped[(i, j)]).norm());
            }
        }

        let (a2, b2) = inverse_algebra_map(&f);
        max_roundtrip = max_roundtrip.max((a - a2).norm()).max((b - b2).norm());

        let raw = So4Element::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
        );
        let star = hodge_star(&raw);
        assert_eq!(hodge_star(&star), raw, "Hodge star must be an involution");
        let fa = raw.as_array();
        let sa = star.as_array();
        let combine = |sign: f64| {
            So4Element::new(
                (fa[0] + sign * sa[0]) / 2.0,
                (fa[1] + sign * sa[1]) / 2.0,
                (fa[2] + sign * sa[2]) / 2.0,
                (fa[3] + sign * sa[3]) / 2.0,
                (fa[4] + sign * sa[4]) / 2.0,
                (fa[5] + sign * sa[5]) / 2.0,
            )
        };
        let (_, b_self) = inverse_algebra_map(&combine(1.0));
        let (a_anti, _) = inverse_algebra_map(&combine(-1.0));
        max_split = max_split.max(b_self.norm()).max(a_anti.norm());
    }
    assert!(max_entry < 1e-13, "entrywise defect {max_entry}");
    assert!(max_roundtrip < 1e-14, "roundtrip defect {max_roundtrip}");
    assert!(max_split < 1e-13, "Hodge split defect {max_split}");
    println!(
        "criterion 2 (algebra correspondence): PASS  entrywise={max_entry:.2e} \
         roundtrip={max_roundtrip:.2e} hodge={max_split:.2e}"
    );
}

#[test]
fn criterion_3_special_exact_result_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let start = Instant::now();
    let mut max_err = 0.0f64;
    for _ in 0..1000 {
        let h = cross_hamiltonian(&mut rng);
        let t = rng.random_range(-10.0..10.0);
        let u = evolve_exact_cross(&h, t).expect("cross-class by construction");
        max_err = max_err.max(u.frobenius_distance(&evolve_oracle(&h, t)));
    }
    let elapsed = start.elapsed();
    assert!(max_err < 1e-11, "max error {max_err}");
    assert!(elapsed.as_secs_f64() < 2.0, "took {elapsed:?}");
    println!(
        "criterion 3 (exact cross vs oracle): PASS  max_error={max_err:.2e} elapsed={elapsed:?}"
    );
}

#[test]
fn criterion_4_special_exact_result_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut max_err = 0.0f64;
    for k in 0..1000 {
        // Every fifth sample exercises the restricted h14 = 0 sub-case.
        let h = checkerboard_hamiltonian(&mut rng, k % 5 != 0);
        let t = rng.random_range(-10.0..10.0);
        let u = evolve_exact_checkerboard(&h, t).expect("checkerboard-class by construction");
        max_err = max_err.max(u.frobenius_distance(&evolve_oracle(&h, t)));
    }
    assert!(max_err < 1e-11, "max error {max_err}");
    println!("criterion 4 (exact checkerboard vs oracle): PASS  max_error={max_err:.2e}");
}

#[test]
fn criterion_5_approximate_factorization() {
    // The all-ones Hamiltonian is degenerate for this measurement: with
    // h13 = h24, h14 = h23 and h12 = h34 its conjugate reduces to
    // s3(x)1 + 1(x)s2 + s3(x)s2, which commute, so the product formula is
    // exact there (asserted below) and carries no measurable error order.
    for &t in &[0.01, 0.3, 2.0] {
        let approx = approx_error(&ALL_ONES, t);
        assert!(approx < 1e-12, "all-ones approx error {approx} at t={t}");
        let u = evolve_symmetrized(&ALL_ONES, t);
        let symm = u.frobenius_distance(&evolve_oracle(&ALL_ONES, t));
        assert!(symm < 1e-12, "all-ones symmetrized error {symm} at t={t}");
    }

    // Order measurement on a non-commuting instance with all six couplings
    // active: slope 2 for the plain product, slope 3 symmetrized.
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
    let slope_approx = fit_slope(&approx);
    let slope_symm = fit_slope(&symm);
    assert!(
        (slope_approx - 2.0).abs() <= 0.1,
        "approx slope {slope_approx}"
    );
    assert!(
        (slope_symm - 3.0).abs() <= 0.15,
        "symmetrized slope {slope_symm}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut max_cross_err = 0.0f64;
    for _ in 0..200 {
        let h = cross_hamiltonian(&mut rng);
        let t = rng.random_range(-5.0..5.0);
        max_cross_err = max_cross_err.max(approx_error(&h, t));
    }
    assert!(max_cross_err < 1e-12, "cross-class error {max_cross_err}");
    println!(
        "criterion 5 (splitting orders): PASS  approx_slope={slope_approx:.3} \
         symmetrized_slope={slope_symm:.3} cross_exactness={max_cross_err:.2e} \
         all_ones_exact=true"
    );
}

#[test]
fn criterion_6_su2_bch() {
    // Hand-derived case first: x = y = (pi/4, 0, 0).
    let x = Su2Vector::new(std::f64::consts::FRAC_PI_4, 0.0, 0.0);
    let k = su2_bch_coeffs(&x, &x).unwrap();
    assert!((k.alpha - 1.0).abs() < 1e-13, "alpha {}", k.alpha);
    assert!((k.beta - 1.0).abs() < 1e-13, "beta {}", k.beta);
    let z = su2_bch(&x, &x).unwrap();
    assert!(
        (z - Su2Vector::new(std::f64::consts::FRAC_PI_2, 0.0, 0.0)).norm() < 1e-13,
        "z {z:?}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut max_err = 0.0f64;
    let mut resampled = 0u32;
    for _ in 0..10_000 {
        // Pairs with |x|, |y| <= 1; the closed form reports compositions
        // that leave the principal branch, and those are resampled.
        let (x, y, z) = loop {
            let x = su2_ball(&mut rng, 1.0);
            let y = su2_ball(&mut rng, 1.0);
            match su2_bch(&x, &y) {
                Ok(z) => break (x, y, z),
                Err(_) => resampled += 1,
            }
        };
        let err = exp_su2(&z).frobenius_distance(&(exp_su2(&x) * exp_su2(&y)));
        max_err = max_err.max(err);
    }
    assert!(max_err < 1e-11, "max error {max_err}");
    println!(
        "criterion 6 (su(2) BCH): PASS  max_error={max_err:.2e} branch_resamples={resampled}"
    );
}

#[test]
fn criterion_7_su4_bch() {
    let i = C64::new(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut max_err = 0.0f64;
    for _ in 0..10_000 {
        let a = CheckerboardSym::new(
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
        );
        let b = CheckerboardSym::new(
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
        );
        let z = su4_bch(&a, &b).expect("|f|, |g| <= 0.5 stays on the branch");
        let m = z.to_matrix();
        // Closure pattern holds exactly by construction.
        for k in 0..4 {
            assert_eq!(m[(k, k)], C64::ZERO);
        }
        assert_eq!(m[(0, 1)].im, 0.0);
        assert_eq!(m[(0, 3)].im, 0.0);
        assert_eq!(m[(1, 2)].im, 0.0);
        assert_eq!(m[(2, 3)].im, 0.0);
        assert_eq!(m[(0, 2)].re, 0.0);
        assert_eq!(m[(1, 3)].re, 0.0);

        let lhs = expm_series(&(a.to_matrix() * i)) * expm_series(&(b.to_matrix() * i));
        let rhs = expm_series(&(m * i));
        max_err = max_err.max(lhs.frobenius_distance(&rhs));
    }
    assert!(max_err < 1e-10, "max residual {max_err}");

    // Agreement with the truncated series improves as O(eps^5) under halving.
    let a0 = CheckerboardSym::new(0.43, -0.31, 0.22, 0.37);
    let b0 = CheckerboardSym::new(-0.24, 0.41, -0.17, 0.29);
    let samples: Vec<(f64, f64)> = (0..4)
        .map(|k| {
            let eps = 0.5f64.powi(k);
            let a = CheckerboardSym::new(a0.f1 * eps, a0.f2 * eps, a0.f3 * eps, a0.f4 * eps);
            let b = CheckerboardSym::new(b0.f1 * eps, b0.f2 * eps, b0.f3 * eps, b0.f4 * eps);
            let closed = su4_bch(&a, &b).unwrap().to_matrix() * i;
            let series = bch_series(&(a.to_matrix() * i), &(b.to_matrix() * i), 4).unwrap();
            (eps, closed.frobenius_distance(&series))
        })
        .collect();
    let slope = fit_slope(&samples);
    assert!(
        (4.5..=5.5).contains(&slope),
        "series agreement slope {slope}, samples {samples:?}"
    );
    println!("criterion 7 (su(4) BCH): PASS  max_residual={max_err:.2e} series_slope={slope:.2}");
}

#[test]
fn criterion_8_oracle_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut max_gap = 0.0f64;
    let mut max_roundtrip = 0.0f64;
    for _ in 0..1000 {
        let h = hermitian4(&mut rng, 2.5);
        // Keep |tH| under 50 in Frobenius norm.
        let t = rng.random_range(-5.0f64..5.0) * 9.0 / h.frobenius_norm().max(1.0);
        let via_eigen = expm_hermitian(ExpSign::MinusI, &h, t).unwrap();
        let via_series = expm_series(&(h * C64::new(0.0, -t)));
        max_gap = max_gap.max(via_eigen.frobenius_distance(&via_series));

        let z = h * (0.9 / h.frobenius_norm().max(1.0));
        let u = expm_series(&(z * C64::new(0.0, 1.0)));
        let log = logm_unitary(&u).expect("exponent stays inside the branch");
        max_roundtrip = max_roundtrip.max(expm_series(&log).frobenius_distance(&u));
    }
    assert!(max_gap < 1e-11, "route gap {max_gap}");
    assert!(max_roundtrip < 1e-11, "logm roundtrip {max_roundtrip}");
    println!(
        "criterion 8 (oracle independence): PASS  route_gap={max_gap:.2e} \
         logm_roundtrip={max_roundtrip:.2e}"
    );
}

#[test]
fn criterion_9_cli_verify() {
    let exe = env!("CARGO_BIN_EXE_magicexpm");
    let start = Instant::now();
    let first = std::process::Command::new(exe)
        .args(["verify", "--seed", "42", "--trials", "100"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        first.status.success(),
        "verify exited with {:?}\n{}",
        first.status.code(),
        String::from_utf8_lossy(&first.stdout)
    );
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");

    let second = std::process::Command::new(exe)
        .args(["verify", "--seed", "42", "--trials", "100"])
        .output()
        .expect("binary runs");
    assert_eq!(first.stdout, second.stdout, "repeated runs must be byte-identical");
    assert_eq!(first.stderr, second.stderr);
    println!("criterion 9 (cli verify): PASS  elapsed={elapsed:?} bytes={}", first.stdout.len());
}
