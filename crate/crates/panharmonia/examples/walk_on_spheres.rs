//! Dirichlet problems for the modified Helmholtz equation via
//! Bessel-weighted walk on spheres.
//!
//! A walk starting at x jumps to a uniform point of the largest inscribed
//! sphere, over and over, until it lands in a thin shell near the
//! boundary. For the screened equation each jump of radius rho carries the
//! factor 1 / a_sphere(mu rho), either as a multiplicative weight or as a
//! survival probability. The boundary value at the landing point, times
//! the accumulated weight, is an unbiased estimate of u(x) up to the
//! O(epsilon) shell bias.

use panharmonia::fields::{make_control, make_fundamental, make_u_radial, ControlKind, FundamentalSign};
use panharmonia::geometry::parse_domain;
use panharmonia::specfun::coeff;
use panharmonia::wos::wos_solve;
use panharmonia::{CoeffKind, Point, Result, WosConfig, WosVariant};

fn main() -> Result<()> {
    let mu = 1.0;
    let ball = parse_domain("ball:1", 3)?;
    let center = Point::origin(3)?;
    let cfg = WosConfig {
        walks: 100_000,
        seed: 7,
        ..WosConfig::default()
    };

    println!("problem 1: g = 1 on the unit sphere, evaluated at the center.");
    println!("the exact solution is u(0) = 1 / a_sphere(mu) = mu / sinh(mu).");
    let g1 = make_control(3, ControlKind::Constant(1.0))?;
    let sol = wos_solve(&ball, &g1, mu, &center, &cfg)?;
    let exact = 1.0 / coeff(CoeffKind::Sphere, 3, mu)?;
    println!(
        "  estimate {:.10} +- {:.1e}   exact {exact:.10}",
        sol.estimate.value, sol.estimate.std_error
    );
    println!(
        "  (from the center the first jump reaches the boundary, so the\n   estimate is exact and its standard error is {:.1})",
        sol.estimate.std_error
    );

    println!();
    println!("problem 2: boundary data from u = sinh(|x|)/|x|, off-center start.");
    let u = make_u_radial(3, mu, Point::origin(3)?)?;
    let x = Point::new(vec![0.3, 0.2, 0.1])?;
    let sol = wos_solve(&ball, &u, mu, &x, &cfg)?;
    let rho = x.norm();
    let exact = rho.sinh() / rho;
    let dev = (sol.estimate.value - exact).abs() / sol.estimate.std_error;
    println!(
        "  estimate {:.8} +- {:.2e}   exact {exact:.8}   ({dev:.2} sigma off)",
        sol.estimate.value, sol.estimate.std_error
    );
    println!(
        "  mean walk length {:.2} steps, killed fraction {}",
        sol.mean_steps, sol.killed_fraction
    );

    println!();
    println!("problem 3: pole data E(x) = e^(-|x - p|)/|x - p|, p = (3,0,0).");
    println!("E is panharmonic inside the ball, so u(0) = E(0) = e^-3 / 3.");
    let pole = Point::new(vec![3.0, 0.0, 0.0])?;
    let e_minus = make_fundamental(mu, pole, FundamentalSign::Minus)?;
    let sol = wos_solve(&ball, &e_minus, mu, &center, &cfg)?;
    let exact = (-3.0f64).exp() / 3.0;
    println!(
        "  estimate {:.10} +- {:.2e}   exact {exact:.10}",
        sol.estimate.value, sol.estimate.std_error
    );

    println!();
    println!("the killing variant replaces weights by survival draws:");
    let killing = WosConfig {
        variant: WosVariant::Killing,
        ..cfg.clone()
    };
    let sol_w = wos_solve(&ball, &g1, mu, &x, &cfg)?;
    let sol_k = wos_solve(&ball, &g1, mu, &x, &killing)?;
    println!(
        "  weighted  {:.8} +- {:.2e}   killed fraction {:.4}",
        sol_w.estimate.value, sol_w.estimate.std_error, sol_w.killed_fraction
    );
    println!(
        "  killing   {:.8} +- {:.2e}   killed fraction {:.4}",
        sol_k.estimate.value, sol_k.estimate.std_error, sol_k.killed_fraction
    );

    println!();
    println!("shrinking the termination shell halves the O(epsilon) bias:");
    for &eps in &[4e-3, 2e-3, 1e-3] {
        let cfg_eps = WosConfig {
            epsilon_shell: eps,
            ..cfg.clone()
        };
        let sol = wos_solve(&ball, &u, mu, &x, &cfg_eps)?;
        println!(
            "  eps = {eps:>6}: estimate {:.8} +- {:.2e}, mean steps {:.2}",
            sol.estimate.value, sol.estimate.std_error, sol.mean_steps
        );
    }
    Ok(())
}
