//! The ball characterization: only balls average like a point source.
//!
//! Two experiments, both Monte Carlo over the domain D:
//!
//! 1. Discrepancy. For the reference field U, the volume mean over a ball
//!    of matched radius r equals a_ball(mu r) U(center). Measuring
//!    Delta(D) = |D| (mean_D U - a_ball(mu r_matched) U(center)) gives 0
//!    exactly when D is that ball; any other shape of the same volume
//!    leaves a nonzero signature.
//!
//! 2. Exterior probes. Averaging the fundamental kernels E_+- (x, y) over
//!    y in D and comparing with the matched point source at the center:
//!    equality at every exterior probe again forces D to be a ball.

use panharmonia::geometry::parse_domain;
use panharmonia::verify::{kugel_discrepancy, kugel_fundamental_check};
use panharmonia::{Point, Result, RngStream};

fn main() -> Result<()> {
    let mu = 1.0;
    let samples = 400_000;

    println!("discrepancy Delta on shapes of equal volume (mu = {mu}, {samples} samples):");
    let shapes = [
        "ball:1",
        "ellipsoid:1.2,1,0.8333333333333334",
        "ellipsoid:1.44,1,0.6944444444444444",
    ];
    for spec in &shapes {
        let d = parse_domain(spec, 3)?;
        let mut rng = RngStream::new(11, 0);
        let est = kugel_discrepancy(&d, mu, samples, &mut rng)?;
        let sig = est.value.abs() / est.std_error;
        println!(
            "  {:<38} Delta = {:>12.3e} +- {:.1e}   ({sig:>6.1} sigma from zero)",
            spec, est.value, est.std_error
        );
    }
    println!("  the matched ball is consistent with zero; the ellipsoids are not,");
    println!("  and the signature grows with the axis ratio.");

    println!();
    println!("exterior probes of the averaged fundamental kernels:");
    let probes = [
        Point::new(vec![2.0, 0.0, 0.0])?,
        Point::new(vec![0.0, -2.5, 0.0])?,
        Point::new(vec![1.5, 1.5, 1.5])?,
    ];
    for spec in &["ball:1", "ellipsoid:1.3,1,0.7692307692307693"] {
        let d = parse_domain(spec, 3)?;
        let mut rng = RngStream::new(5, 0);
        let report =
            kugel_fundamental_check(&d, mu, &Point::origin(3)?, &probes, samples, &mut rng)?;
        println!(
            "  {:<38} passed = {:<5} worst probe residual = {:.2} (threshold 1 = 3 sigma)",
            spec, report.passed, report.max_relative_residual
        );
    }
    println!("  the ball matches the point source at every probe and sign;");
    println!("  the ellipsoid is caught at more than 5 sigma.");
    Ok(())
}
