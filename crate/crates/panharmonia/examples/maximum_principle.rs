//! Weak maximum principle and subharmonicity of nonnegative panharmonic
//! functions.
//!
//! A panharmonic function attains its maximum modulus on the boundary of
//! any admissible domain. One route to that fact: a nonnegative
//! panharmonic u is subharmonic, because its spherical means satisfy
//! M_sphere(u, x, r) = a_sphere(mu r) u(x) >= u(x), the coefficient being
//! at least 1. This example checks both statements numerically.

use panharmonia::fields::{make_plane_wave, make_u_radial};
use panharmonia::geometry::parse_domain;
use panharmonia::means::sphere_mean;
use panharmonia::verify::{verify_identity, verify_max_principle, IdentityKind};
use panharmonia::{Point, QuadratureConfig, Result, RngStream};

fn main() -> Result<()> {
    let mu = 1.0;
    let u = make_u_radial(3, mu, Point::origin(3)?)?;

    println!("maximum principle for u = sinh(|x|)/|x| on the unit ball:");
    let ball = parse_domain("ball:1", 3)?;
    let report = verify_max_principle(&u, &ball, 33)?;
    println!("  {}", report.notes);
    for case in &report.cases {
        println!(
            "  interior max {:.15}  <  boundary max {:.15}   ({})",
            case.observed, case.expected, case.inputs
        );
    }
    println!(
        "  sinh(1) = {:.15} is the exact boundary value",
        1.0f64.sinh()
    );

    println!();
    println!("the same check on a box, where the boundary set is exact:");
    let wave = make_plane_wave(3, mu, vec![1.0, 0.0, 0.0])?;
    let boxy = parse_domain("box:-1,-1,-1/1,1,1", 3)?;
    let report = verify_max_principle(&wave, &boxy, 17)?;
    println!(
        "  field e^(mu x_1) on {boxy}: passed = {}, residual = {:.3e}",
        report.passed, report.max_relative_residual
    );

    println!();
    println!("subharmonicity, pointwise: M_sphere(u, x, r) >= u(x)");
    let q = QuadratureConfig::default();
    let x = Point::new(vec![0.3, 0.1, -0.4])?;
    let ux = u.evaluate(&x)?;
    for &r in &[0.05, 0.2, 0.5] {
        let mean = sphere_mean(&u, &x, r, &q)?.value;
        println!(
            "  r = {r:>4}: mean = {mean:.12}  value = {ux:.12}  excess = {:+.3e}",
            mean - ux
        );
    }

    println!();
    println!("and as a randomized identity check over 20 configurations:");
    let big_ball = parse_domain("ball:2", 3)?;
    let mut rng = RngStream::new(9, 0);
    let report = verify_identity(
        IdentityKind::Subharmonic,
        &u,
        mu,
        &big_ball,
        &q,
        20,
        &mut rng,
    )?;
    println!(
        "  {}: passed = {}, worst violation = {:.3e}",
        report.check_id, report.passed, report.max_relative_residual
    );
    Ok(())
}
