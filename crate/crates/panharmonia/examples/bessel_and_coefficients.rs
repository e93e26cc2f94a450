//! Half-integer modified Bessel functions and the mean-value coefficients.
//!
//! A panharmonic function (a solution of the modified Helmholtz equation
//! with parameter mu) satisfies mean value identities whose radius-dependent
//! factors are normalized Bessel quotients:
//!
//!   sphere coefficient  a_sphere(t) = Gamma(m/2) (2/t)^{(m-2)/2} I_{(m-2)/2}(t)
//!   ball coefficient    a_ball(t)   = Gamma(m/2 + 1) (2/t)^{m/2} I_{m/2}(t)
//!
//! with t = mu * r. In three dimensions these collapse to elementary
//! functions, which makes every value below checkable by hand.

use panharmonia::specfun::{
    bessel_i, coeff, coeff_scaled, coeff_sphere_asymptotic, poisson_integral_u,
};
use panharmonia::{CoeffKind, HalfOrder, Result};
use std::f64::consts::PI;

fn main() -> Result<()> {
    println!("half-integer Bessel values against closed forms");
    println!("  I_1/2(z) = sqrt(2 / (pi z)) sinh z");
    for &z in &[0.1, 1.0, 5.0, 30.0] {
        let computed = bessel_i(HalfOrder::from_twice(1), z, false)?;
        let exact = (2.0 / (PI * z)).sqrt() * z.sinh();
        println!(
            "  z = {z:>5}   series {computed:.16e}   closed form {exact:.16e}"
        );
    }

    println!();
    println!("mean-value coefficients in m = 3 at t = 1");
    let a_sphere = coeff(CoeffKind::Sphere, 3, 1.0)?;
    let a_ball = coeff(CoeffKind::Ball, 3, 1.0)?;
    let ratio = coeff(CoeffKind::Ratio, 3, 1.0)?;
    println!("  a_sphere(1) = {a_sphere}   (sinh 1 = {})", 1.0f64.sinh());
    println!("  a_ball(1)   = {a_ball}   (3/e = {})", 3.0 / 1.0f64.exp());
    println!("  ratio       = {ratio}   (a_ball / a_sphere = {})", a_ball / a_sphere);

    println!();
    println!("both coefficients start at 1 and grow like e^t / t^k:");
    for &t in &[0.0, 0.5, 2.0, 10.0] {
        println!(
            "  t = {t:>4}   a_sphere = {:>22}   a_ball = {:>22}",
            coeff(CoeffKind::Sphere, 3, t)?,
            coeff(CoeffKind::Ball, 3, t)?
        );
    }

    println!();
    println!("large arguments overflow the plain coefficient; the scaled");
    println!("variant e^-t a(t) stays representable:");
    match coeff(CoeffKind::Sphere, 3, 800.0) {
        Err(e) => println!("  coeff(sphere, 3, 800)        -> error: {e}"),
        Ok(v) => println!("  coeff(sphere, 3, 800)        -> {v}"),
    }
    println!(
        "  coeff_scaled(sphere, 3, 800) -> {}",
        coeff_scaled(CoeffKind::Sphere, 3, 800.0)?
    );

    println!();
    println!("the one-term asymptotic used by the Liouville bound:");
    for &m in &[2usize, 3] {
        let exact = coeff(CoeffKind::Sphere, m, 50.0)?;
        let approx = coeff_sphere_asymptotic(m, 50.0)?;
        println!(
            "  m = {m}   exact {exact:.10e}   asymptotic {approx:.10e}   rel err {:.2e}",
            ((approx - exact) / exact).abs()
        );
    }

    println!();
    println!("independent cross-check: the Poisson-type integral");
    println!("  (1 / omega_m) int_{{S^1}} e^{{t cos theta}} dS  equals  a_sphere(t)");
    for &(m, t) in &[(2usize, 0.7), (3, 1.0), (5, 4.2)] {
        let integral = poisson_integral_u(m, t)?;
        let direct = coeff(CoeffKind::Sphere, m, t)?;
        println!(
            "  m = {m}, t = {t:>4}   integral {integral:.15e}   series {direct:.15e}"
        );
    }
    Ok(())
}
