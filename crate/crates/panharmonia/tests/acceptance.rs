//! Acceptance criteria, one test per criterion, each printing a single
//! pass/fail line with its decisive numbers. Run with `--nocapture` to see
//! the lines for passing criteria as well.

use panharmonia::detector::{classify, panharmonic_score};
use panharmonia::fields::{catalog, make_control, make_fundamental, make_u_radial, ControlKind, FundamentalSign};
use panharmonia::specfun::{coeff, coeff_sphere_asymptotic, poisson_integral_u};
use panharmonia::verify::{
    harmonic_part_field, harmonic_part_value, kugel_discrepancy, kugel_fundamental_check,
    riesz_harmonic_part, verify_asymptotic, verify_identity, verify_max_principle,
};
use panharmonia::wos::wos_solve;
use panharmonia::{
    AsymptoticKind, ClassifyConfig, CoeffKind, Domain, FieldClass, IdentityKind, Point,
    QuadratureConfig, Result, RngStream, ScalarField, WosConfig, WosVariant,
};
use std::time::Instant;

fn report(id: &str, name: &str, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("acceptance {id} {name}: {status} ({detail})");
    assert!(passed, "criterion {id} {name} failed: {detail}");
}

fn rel(observed: f64, expected: f64) -> f64 {
    (observed - expected).abs() / expected.abs().max(1e-300)
}

/// Independent power-series oracle for I_0, written against the textbook
/// sum rather than the library's general-order routine.
fn i0_series(t: f64) -> f64 {
    let x = 0.25 * t * t;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        term *= x / ((k * k) as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn origin(m: usize) -> Point {
    Point::origin(m).unwrap()
}

fn pt(coords: &[f64]) -> Point {
    Point::new(coords.to_vec()).unwrap()
}

/// A ball well clear of the field's singular points, mirroring the
/// domains the identity suite uses.
fn clear_domain(m: usize, f: &ScalarField) -> Domain {
    if f.singular_points().is_empty() {
        Domain::ball(origin(m), 1.5).unwrap()
    } else {
        let mut c = vec![0.0; m];
        c[0] = 2.2;
        Domain::ball(pt(&c), 1.1).unwrap()
    }
}

#[test]
fn criterion_01_special_function_oracles() -> Result<()> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for k in 1..=100 {
        let t = k as f64 * 0.1;
        let sphere3 = coeff(CoeffKind::Sphere, 3, t)?;
        worst = worst.max(rel(sphere3, t.sinh() / t));
        let ball3 = coeff(CoeffKind::Ball, 3, t)?;
        worst = worst.max(rel(ball3, 3.0 * (t * t.cosh() - t.sinh()) / (t * t * t)));
        let sphere2 = coeff(CoeffKind::Sphere, 2, t)?;
        worst = worst.max(rel(sphere2, i0_series(t)));
    }
    let mut worst_poisson = 0.0f64;
    for &m in &[2usize, 3, 5] {
        for k in 1..=20 {
            let t = k as f64 * 0.5;
            worst_poisson = worst_poisson.max(rel(poisson_integral_u(m, t)?, coeff(CoeffKind::Sphere, m, t)?));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst <= 1e-12 && worst_poisson <= 1e-10 && elapsed < 1.0;
    report(
        "01",
        "special-function oracles",
        passed,
        &format!(
            "closed-form residual {worst:.2e} <= 1e-12, Poisson-integral residual \
             {worst_poisson:.2e} <= 1e-10, {elapsed:.2} s < 1 s"
        ),
    );
    Ok(())
}

#[test]
fn criterion_02_identity_suite() -> Result<()> {
    let start = Instant::now();
    let kinds = [
        IdentityKind::Sphere,
        IdentityKind::Ball,
        IdentityKind::Coupling,
        IdentityKind::Iterated,
    ];
    let mut worst = 0.0f64;
    let mut reports = 0usize;
    for &m in &[2usize, 3] {
        for &mu in &[0.5, 1.0, 2.0] {
            for f in catalog(m, mu)?
                .into_iter()
                .filter(|f| f.class() == FieldClass::Panharmonic)
            {
                let d = clear_domain(m, &f);
                for (i, &kind) in kinds.iter().enumerate() {
                    let q = if kind == IdentityKind::Iterated {
                        QuadratureConfig::coarse()
                    } else {
                        QuadratureConfig::default()
                    };
                    let mut rng = RngStream::new(202, (reports * 4 + i) as u64);
                    let r = verify_identity(kind, &f, mu, &d, &q, 20, &mut rng)?;
                    assert!(r.cases.len() >= 20, "{} ran {} configs", r.check_id, r.cases.len());
                    assert!(
                        r.threshold <= 1e-8,
                        "{} threshold {} is looser than 1e-8",
                        r.check_id,
                        r.threshold
                    );
                    assert!(
                        r.passed,
                        "{} failed for {} (m={m}, mu={mu}): residual {:.3e}",
                        r.check_id,
                        f.label(),
                        r.max_relative_residual
                    );
                    worst = worst.max(r.max_relative_residual);
                }
                reports += kinds.len();
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let passed = worst <= 1e-8 && elapsed < 30.0;
    report(
        "02",
        "identity suite",
        passed,
        &format!(
            "{reports} checks x 20 configurations, worst residual {worst:.2e} <= 1e-8, \
             {elapsed:.1} s < 30 s"
        ),
    );
    Ok(())
}

#[test]
fn criterion_03_asymptotic_limits() -> Result<()> {
    let mut worst = 0.0f64;
    for &m in &[2usize, 3] {
        let u = make_u_radial(m, 1.0, origin(m))?;
        let points: Vec<Point> = match m {
            2 => vec![pt(&[0.3, 0.0]), pt(&[-0.25, 0.3]), pt(&[0.1, -0.45])],
            _ => vec![
                pt(&[0.3, 0.0, 0.0]),
                pt(&[-0.2, 0.35, 0.1]),
                pt(&[0.1, -0.3, 0.25]),
            ],
        };
        for x in &points {
            for kind in [AsymptoticKind::Sphere, AsymptoticKind::Volume] {
                let r = verify_asymptotic(kind, &u, 1.0, x)?;
                assert!(
                    r.passed,
                    "asymptotic {kind} failed at {x} (m={m}): residual {:.3e}",
                    r.max_relative_residual
                );
                worst = worst.max(r.max_relative_residual);
            }
        }
    }
    report(
        "03",
        "asymptotic limits",
        worst <= 1e-6,
        &format!("sphere and volume limits at 3 points, m in {{2,3}}, worst residual {worst:.2e} <= 1e-6"),
    );
    Ok(())
}

#[test]
fn criterion_04_maximum_principle_and_subharmonicity() -> Result<()> {
    let u3 = make_u_radial(3, 1.0, origin(3))?;
    let ball = Domain::ball(origin(3), 1.0)?;
    let max_report = verify_max_principle(&u3, &ball, 33)?;
    let interior_max = max_report.cases[0].observed;
    let boundary_max = 1.0f64.sinh();
    let strict = interior_max < boundary_max;

    let q = QuadratureConfig::default();
    let mut worst_violation = 0.0f64;
    let big = Domain::ball(origin(3), 2.0)?;
    let mut rng = RngStream::new(404, 0);
    let sub_u = verify_identity(IdentityKind::Subharmonic, &u3, 1.0, &big, &q, 50, &mut rng)?;
    worst_violation = worst_violation.max(sub_u.max_relative_residual);
    let efund = make_fundamental(1.0, pt(&[3.0, 0.0, 0.0]), FundamentalSign::Minus)?;
    let mut rng = RngStream::new(404, 1);
    let sub_e = verify_identity(IdentityKind::Subharmonic, &efund, 1.0, &ball, &q, 50, &mut rng)?;
    worst_violation = worst_violation.max(sub_e.max_relative_residual);

    let passed = max_report.passed && strict && sub_u.passed && sub_e.passed;
    report(
        "04",
        "maximum principle and subharmonicity",
        passed,
        &format!(
            "interior max {interior_max:.12} < sinh(1) = {boundary_max:.12}; \
             sphere_mean >= value over 2 x 50 configurations, worst violation {worst_violation:.1e}"
        ),
    );
    Ok(())
}

#[test]
fn criterion_05_liouville_decay() -> Result<()> {
    let mut detail = String::new();
    let mut passed = true;
    for &m in &[2usize, 3] {
        let exact = coeff(CoeffKind::Sphere, m, 50.0)?;
        let ratio = coeff_sphere_asymptotic(m, 50.0)? / exact;
        let ratio_ok = (ratio - 1.0).abs() <= 1e-3;
        passed &= ratio_ok;
        detail.push_str(&format!("m={m}: |ratio-1| = {:.2e} vs 1e-3; ", (ratio - 1.0).abs()));

        let constant = coeff_sphere_asymptotic(m, 1.0)? / 1.0f64.exp();
        let envelope = |r: f64| {
            (1.0 + r).powi(2) * r.powf((m as f64 - 1.0) / 2.0) * (-r).exp() * constant
        };
        let env40 = envelope(40.0);
        let env_ok = env40 < 1e-6 && envelope(40.0) < envelope(30.0);
        passed &= env_ok;
        detail.push_str(&format!("envelope(40) = {env40:.2e} < 1e-6; "));
    }
    report("05", "Liouville decay", passed, detail.trim_end_matches("; "));
    Ok(())
}

#[test]
fn criterion_06_detector() -> Result<()> {
    let mut checked = 0usize;
    let mut worst_mu_err = 0.0f64;
    for &m in &[2usize, 3] {
        let mut c = vec![0.0; m];
        c[0] = 2.2;
        let domain = Domain::ball(pt(&c), 1.0)?;
        let config = ClassifyConfig::default();
        for f in catalog(m, 1.0)? {
            let verdict = classify(&f, &domain, &config)?;
            assert_eq!(
                verdict.class,
                f.class(),
                "misclassified {} (m={m}): got {}",
                f.label(),
                verdict.class
            );
            if f.class() == FieldClass::Panharmonic {
                let mu_hat = verdict.mu_hat.expect("panharmonic verdicts carry mu_hat");
                worst_mu_err = worst_mu_err.max((mu_hat - 1.0).abs());
            }
            checked += 1;
        }
    }

    let u = make_u_radial(3, 1.0, origin(3))?;
    let domain = Domain::ball(pt(&[2.2, 0.0, 0.0]), 1.0)?;
    let q = QuadratureConfig::default();
    let mut rng = RngStream::new(606, 0);
    let wrong = panharmonic_score(&u, 2.0, &domain, 4, 6, &q, &mut rng)?;
    let variation = wrong.max_relative_residual;

    let passed = worst_mu_err <= 1e-3 && !wrong.passed && variation >= 1e-3;
    report(
        "06",
        "detector",
        passed,
        &format!(
            "{checked} catalog fields classified correctly, mu error {worst_mu_err:.2e} <= 1e-3, \
             wrong-mu variation {variation:.2e} >= 1e-3"
        ),
    );
    Ok(())
}

#[test]
fn criterion_07_riesz_decomposition() -> Result<()> {
    let u = make_u_radial(3, 1.0, origin(3))?;
    let ball = Domain::ball(origin(3), 1.0)?;
    let h_exact = 1.0f64.cosh();

    let mut worst_h = 0.0f64;
    let mut majorizes = true;
    let probes: Vec<Point> = (0..10)
        .map(|i| pt(&[(i as f64 + 1.0) / 11.0, 0.0, 0.0]))
        .collect();
    for x in &probes {
        let h = harmonic_part_value(&u, 1.0, &ball, x)?;
        worst_h = worst_h.max((h - h_exact).abs());
        majorizes &= h >= u.evaluate(x)?;
    }

    let h_field = harmonic_part_field(&u, 1.0, &ball)?;
    let delta = 0.01;
    let mut worst_laplacian = 0.0f64;
    for x in [pt(&[0.2, 0.1, -0.1]), pt(&[0.4, 0.0, 0.2])] {
        let mut lap = 0.0;
        let h0 = h_field.evaluate(&x)?;
        for i in 0..3 {
            let mut e = vec![0.0; 3];
            e[i] = 1.0;
            let plus = h_field.evaluate(&x.translated(&e, delta))?;
            let minus = h_field.evaluate(&x.translated(&e, -delta))?;
            lap += (plus + minus - 2.0 * h0) / (delta * delta);
        }
        worst_laplacian = worst_laplacian.max(lap.abs());
    }

    let packaged = riesz_harmonic_part(&u, 1.0, &ball, &probes)?;
    let passed = worst_h <= 1e-6 && worst_laplacian <= 1e-6 && majorizes && packaged.passed;
    report(
        "07",
        "Riesz decomposition",
        passed,
        &format!(
            "|h - cosh(1)| = {worst_h:.2e} <= 1e-6 at 10 radii, discrete Laplacian \
             {worst_laplacian:.2e} <= 1e-6, h majorizes u: {majorizes}"
        ),
    );
    Ok(())
}

#[test]
fn criterion_08_kugel_experiments() -> Result<()> {
    let start = Instant::now();
    let n = 1_000_000;
    let mu = 1.0;

    let ball = Domain::ball(origin(3), 1.0)?;
    let mut rng = RngStream::new(808, 0);
    let ball_delta = kugel_discrepancy(&ball, mu, n, &mut rng)?;
    let ball_ok = ball_delta.value.abs() <= 3.0 * ball_delta.std_error;

    let ellipsoid = Domain::ellipsoid(origin(3), vec![1.2, 1.0, 1.0 / 1.2])?;
    let mut rng = RngStream::new(808, 1);
    let ell_delta = kugel_discrepancy(&ellipsoid, mu, n, &mut rng)?;
    let ell_sig = ell_delta.value / ell_delta.std_error;
    let ell_ok = ell_delta.value > 0.0 && ell_sig >= 5.0;

    let probes = [pt(&[2.0, 0.0, 0.0]), pt(&[0.0, -2.5, 0.0]), pt(&[1.5, 1.5, 1.5])];
    let mut rng = RngStream::new(808, 2);
    let fund_ball = kugel_fundamental_check(&ball, mu, &origin(3), &probes, n, &mut rng)?;
    let mut rng = RngStream::new(808, 3);
    let fund_ell = kugel_fundamental_check(&ellipsoid, mu, &origin(3), &probes, n, &mut rng)?;
    let fund_ell_sig = 3.0 * fund_ell.max_relative_residual;
    let fund_ok = fund_ball.passed && !fund_ell.passed && fund_ell_sig > 5.0;

    let elapsed = start.elapsed().as_secs_f64();
    let passed = ball_ok && ell_ok && fund_ok && elapsed < 60.0;
    report(
        "08",
        "kugel experiments",
        passed,
        &format!(
            "ball delta {:.1e} within 3 sigma ({:.1e}); ellipsoid delta {:.1e} at {ell_sig:.0} sigma >= 5; \
             fundamental check: ball passes, ellipsoid fails at {fund_ell_sig:.0} sigma > 5; {elapsed:.1} s < 60 s",
            ball_delta.value,
            3.0 * ball_delta.std_error,
            ell_delta.value
        ),
    );
    Ok(())
}

#[test]
fn criterion_09_wos_solver() -> Result<()> {
    let start = Instant::now();
    let mu = 1.0;
    let ball = Domain::ball(origin(3), 1.0)?;
    let center = origin(3);

    let sinh1 = make_control(3, ControlKind::Constant(1.0f64.sinh()))?;
    let one = make_control(3, ControlKind::Constant(1.0))?;
    let efund = make_fundamental(mu, pt(&[3.0, 0.0, 0.0]), FundamentalSign::Minus)?;
    let problems: [(&ScalarField, f64, &str); 3] = [
        (&sinh1, 1.0, "g=sinh(1)"),
        (&one, 1.0 / 1.0f64.sinh(), "g=1"),
        (&efund, (-3.0f64).exp() / 3.0, "g=E-"),
    ];

    let mut detail = String::new();
    let mut passed = true;
    for (g, exact, label) in problems {
        let cfg5 = WosConfig {
            walks: 100_000,
            seed: 909,
            ..WosConfig::default()
        };
        let sol5 = wos_solve(&ball, g, mu, &center, &cfg5)?;
        let band = (3.0 * sol5.estimate.std_error).max(1e-12);
        let ok5 = (sol5.estimate.value - exact).abs() <= band;

        let cfg6 = WosConfig {
            walks: 1_000_000,
            ..cfg5.clone()
        };
        let sol6 = wos_solve(&ball, g, mu, &center, &cfg6)?;
        let rel6 = (sol6.estimate.value - exact).abs() / exact.abs();
        let ok6 = rel6 <= 0.01;

        passed &= ok5 && ok6;
        detail.push_str(&format!("{label}: 3-sigma at 1e5 {ok5}, 1e6 rel err {rel6:.1e}; "));
    }

    let x = pt(&[0.3, 0.2, 0.1]);
    let weighted = WosConfig {
        walks: 100_000,
        seed: 909,
        ..WosConfig::default()
    };
    let killing = WosConfig {
        variant: WosVariant::Killing,
        ..weighted.clone()
    };
    let sol_w = wos_solve(&ball, &one, mu, &x, &weighted)?;
    let sol_k = wos_solve(&ball, &one, mu, &x, &killing)?;
    let combined = sol_w.estimate.std_error.hypot(sol_k.estimate.std_error);
    let variants_ok = (sol_w.estimate.value - sol_k.estimate.value).abs() <= 3.0 * combined;
    passed &= variants_ok;

    let halved = WosConfig {
        epsilon_shell: 5e-4,
        ..weighted.clone()
    };
    let sol_h = wos_solve(&ball, &one, mu, &x, &halved)?;
    let combined_eps = sol_w.estimate.std_error.hypot(sol_h.estimate.std_error);
    let eps_ok = (sol_w.estimate.value - sol_h.estimate.value).abs() <= 3.0 * combined_eps;
    passed &= eps_ok;

    let elapsed = start.elapsed().as_secs_f64();
    passed &= elapsed < 120.0;
    detail.push_str(&format!(
        "variants agree {variants_ok}, eps halving stable {eps_ok}, {elapsed:.1} s < 120 s"
    ));
    report("09", "WoS solver", passed, &detail);
    Ok(())
}

#[test]
fn criterion_10_reproducibility() -> Result<()> {
    let mu = 1.0;
    let ball = Domain::ball(origin(3), 1.0)?;
    let x = pt(&[0.3, 0.2, 0.1]);
    let u = make_u_radial(3, mu, origin(3))?;
    let cfg = WosConfig {
        walks: 100_000,
        seed: 1010,
        ..WosConfig::default()
    };

    let mut bits: Vec<(u64, u64)> = Vec::new();
    for threads in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool should build");
        let sol = pool.install(|| wos_solve(&ball, &u, mu, &x, &cfg))?;
        bits.push((sol.estimate.value.to_bits(), sol.estimate.std_error.to_bits()));
    }
    let wos_identical = bits[0] == bits[1];

    let mut kugel_bits: Vec<u64> = Vec::new();
    for threads in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool should build");
        let est = pool.install(|| {
            let mut rng = RngStream::new(1010, 0);
            kugel_discrepancy(&ball, mu, 100_000, &mut rng)
        })?;
        kugel_bits.push(est.value.to_bits());
    }
    let kugel_identical = kugel_bits[0] == kugel_bits[1];

    let passed = wos_identical && kugel_identical;
    report(
        "10",
        "reproducibility",
        passed,
        &format!(
            "wos estimate bit-identical across 1 and 4 workers: {wos_identical}; \
             kugel discrepancy bit-identical: {kugel_identical}"
        ),
    );
    Ok(())
}
