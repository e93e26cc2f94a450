//! The full mean-value identity suite over the field catalog.
//!
//! `verify::suite_all` runs every registered check: the seven identities
//! (sphere, ball, coupling, iterated, subharmonic, flux, mean ratio), the
//! r -> 0 asymptotics, the maximum principle on two shapes, Liouville
//! decay, the Riesz decomposition, the ball-characterization experiments,
//! and negative controls that must catch non-panharmonic fields. Each
//! check reports its worst residual, its threshold, and machine-readable
//! cases; the suite summary also serializes to CSV.

use panharmonia::verify::{suite_all, suite_csv};
use panharmonia::Result;

fn main() -> Result<()> {
    let (dim, mu, seed) = (3, 1.0, 42);
    println!("running the verification suite: dim = {dim}, mu = {mu}, seed = {seed}");
    println!();
    let reports = suite_all(dim, mu, seed)?;

    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<34} residual {:>12.5e}  threshold {:>9.1e}  cases {:>3}",
            r.check_id,
            r.max_relative_residual,
            r.threshold,
            r.cases.len()
        );
    }
    let n_pass = reports.iter().filter(|r| r.passed).count();
    println!();
    println!("{n_pass}/{} checks passed", reports.len());

    println!();
    println!("the same summary as CSV (one row per check):");
    print!("{}", suite_csv(&reports));

    println!();
    println!("one report in full, as the JSON the CLI writes:");
    let flux = reports
        .iter()
        .find(|r| r.check_id == "identity_flux")
        .expect("the suite always registers the flux identity");
    println!("{}", serde_json::to_string_pretty(flux)?);
    Ok(())
}
