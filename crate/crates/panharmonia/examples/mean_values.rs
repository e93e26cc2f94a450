//! Sphere, ball, iterated, and domain means against their closed forms.
//!
//! The central identities: for a mu-panharmonic u and any admissible
//! sphere or ball of radius r about x,
//!
//!   M_sphere(u, x, r) = a_sphere(mu r) u(x)
//!   M_ball(u, x, r)   = a_ball(mu r) u(x)
//!
//! and iterating the sphere mean multiplies the coefficients. The flux
//! identity (divergence theorem applied to grad u) closes the circle:
//! the outward flux of grad u through a sphere equals mu^2 times the
//! integral of u over the enclosed ball.

use panharmonia::fields::make_u_radial;
use panharmonia::geometry::unit_ball_volume;
use panharmonia::means::{ball_mean, boundary_flux, domain_mean, iterated_mean, sphere_mean};
use panharmonia::specfun::coeff;
use panharmonia::{CoeffKind, Domain, Point, QuadratureConfig, Result};
use std::f64::consts::PI;

fn main() -> Result<()> {
    let mu = 1.0;
    let u = make_u_radial(3, mu, Point::origin(3)?)?;
    let q = QuadratureConfig::default();

    let x = Point::new(vec![0.2, -0.1, 0.3])?;
    let ux = u.evaluate(&x)?;
    println!("field u = sinh(|y|)/|y| in m = 3, probe point x = {x}, u(x) = {ux:.15}");

    println!();
    println!("sphere and ball means against coefficient times center value:");
    println!(
        "  {:>5} {:>22} {:>22} {:>10}",
        "r", "M_sphere", "a_sphere(mu r) u(x)", "rel err"
    );
    for &r in &[0.1, 0.3, 0.6] {
        let measured = sphere_mean(&u, &x, r, &q)?.value;
        let predicted = coeff(CoeffKind::Sphere, 3, mu * r)? * ux;
        println!(
            "  {r:>5} {measured:>22.16} {predicted:>22.16} {:>10.1e}",
            ((measured - predicted) / predicted).abs()
        );
    }
    println!(
        "  {:>5} {:>22} {:>22} {:>10}",
        "r", "M_ball", "a_ball(mu r) u(x)", "rel err"
    );
    for &r in &[0.1, 0.3, 0.6] {
        let measured = ball_mean(&u, &x, r, &q)?.value;
        let predicted = coeff(CoeffKind::Ball, 3, mu * r)? * ux;
        println!(
            "  {r:>5} {measured:>22.16} {predicted:>22.16} {:>10.1e}",
            ((measured - predicted) / predicted).abs()
        );
    }

    println!();
    println!("iterated sphere means multiply their coefficients:");
    let (r_outer, r_inner) = (0.35, 0.2);
    let iterated = iterated_mean(&u, &x, r_outer, r_inner, &QuadratureConfig::coarse())?.value;
    let product = coeff(CoeffKind::Sphere, 3, mu * r_outer)?
        * coeff(CoeffKind::Sphere, 3, mu * r_inner)?
        * ux;
    println!("  M(M(u, ., {r_inner}), x, {r_outer}) = {iterated:.15}");
    println!("  a_sphere({r_outer}) a_sphere({r_inner}) u(x) = {product:.15}");

    println!();
    println!("flux identity on the unit ball about the origin:");
    let ball = Domain::ball(Point::origin(3)?, 1.0)?;
    let flux = boundary_flux(&u, &ball, &q)?;
    let predicted = mu * mu * unit_ball_volume(3) * coeff(CoeffKind::Ball, 3, mu)? * u.evaluate(&Point::origin(3)?)?;
    println!("  measured flux of grad u through the unit sphere = {flux:.12}");
    println!("  mu^2 |B| a_ball(mu) u(0)                        = {predicted:.12}");
    println!("  4 pi / e                                        = {:.12}", 4.0 * PI / 1.0f64.exp());

    println!();
    println!("domain means fall back to Monte Carlo on general shapes:");
    let shell = Domain::shell(Point::origin(3)?, 0.5, 1.0)?;
    let est = domain_mean(&u, &shell, &q)?;
    println!(
        "  mean of u over {shell}: {:.8} +- {:.1e}  ({} samples, {})",
        est.value, est.std_error, est.samples, est.method
    );
    Ok(())
}
