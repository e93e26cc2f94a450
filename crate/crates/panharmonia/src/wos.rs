//! Bessel-weighted walk-on-spheres solver for the Dirichlet problem of
//! ∇²u = μ²u.
//!
//! The sphere mean value identity rearranges to
//! u(x) = M°(u, x, r) / a°(μr): the solution at x is the expected boundary
//! value of a sphere jump, discounted by 1/a°(μr) < 1. Iterating gives the
//! classical walk-on-spheres recursion with a multiplicative weight
//! (`Weighted`) or, equivalently, with per-step survival probability
//! 1/a°(μr) (`Killing`). At μ = 0 both reduce to harmonic walk-on-spheres.
//!
//! Each walk jumps to a uniform point on the sphere of radius
//! `jump_fraction · distance_to_boundary` until it enters the ε-shell
//! around the boundary, where the boundary data g is scored at the
//! projected boundary point (the standard O(ε) bias choice, measured by
//! the shell-halving test).

use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::geometry::{sample_unit_sphere, Domain, Point, RngStream};
use crate::means::{MeanEstimate, MeanMethod};
use crate::specfun::{coeff, CoeffKind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// How a walk handles the sub-probability weight 1/a°(μr).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WosVariant {
    /// Carry the product of 1/a°(μ r_i) as a multiplicative weight.
    Weighted,
    /// Survive each step with probability 1/a°(μ r_i); survivors score
    /// with weight 1.
    Killing,
}

impl std::str::FromStr for WosVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weighted" => Ok(WosVariant::Weighted),
            "killing" => Ok(WosVariant::Killing),
            _ => Err(Error::Parse(format!(
                "unknown variant '{s}'; known: weighted, killing"
            ))),
        }
    }
}

/// Walk-on-spheres configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WosConfig {
    /// Shell width as a fraction of the domain diameter.
    pub epsilon_shell: f64,
    /// Step cap per walk; capped walks are excluded from the estimate and
    /// counted.
    pub max_steps: usize,
    /// Number of independent walks.
    pub walks: u64,
    /// Weight handling.
    pub variant: WosVariant,
    /// Jump radius as a fraction α ∈ (0, 1] of the distance to the
    /// boundary.
    pub jump_fraction: f64,
    /// Master seed; walk k uses the derived stream k.
    pub seed: u64,
}

impl Default for WosConfig {
    fn default() -> Self {
        WosConfig {
            epsilon_shell: 1e-3,
            max_steps: 10_000,
            walks: 100_000,
            variant: WosVariant::Weighted,
            jump_fraction: 1.0,
            seed: 0,
        }
    }
}

impl WosConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon_shell > 0.0 && self.epsilon_shell < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon_shell must lie in (0, 1), got {}",
                self.epsilon_shell
            )));
        }
        if self.walks == 0 {
            return Err(Error::InvalidArgument("walks must be at least 1".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument(
                "max_steps must be at least 1".into(),
            ));
        }
        if !(self.jump_fraction > 0.0 && self.jump_fraction <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "jump_fraction must lie in (0, 1], got {}",
                self.jump_fraction
            )));
        }
        Ok(())
    }
}

/// How a single walk ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// Entered the ε-shell; scored at the projected boundary point.
    Shell,
    /// Killing variant only: the survival draw failed.
    Killed,
    /// Step cap reached; excluded from the estimate.
    MaxSteps,
}

/// Result of a single walk.
#[derive(Clone, Debug)]
pub struct WalkOutcome {
    /// Scoring point for shell terminations; the last interior position
    /// otherwise.
    pub boundary_point: Point,
    /// Accumulated weight Π 1/a°(μ r_i) (weighted variant); 1 for killing
    /// survivors.
    pub weight: f64,
    /// Jumps taken.
    pub steps: usize,
    pub terminated: Termination,
}

/// Aggregate result of [`wos_solve`].
#[derive(Clone, Debug, Serialize)]
pub struct WosSolution {
    /// Estimate of u(x) with its Monte Carlo standard error.
    pub estimate: MeanEstimate,
    /// Walks launched.
    pub walks: u64,
    /// Fraction of walks removed by the killing draw.
    pub killed_fraction: f64,
    /// Mean steps per walk, over all walks.
    pub mean_steps: f64,
    /// Fraction of walks that hit the step cap (excluded from the
    /// estimate).
    pub max_steps_fraction: f64,
    /// Warnings and bias bounds.
    pub notes: Vec<String>,
}

fn check_start(d: &Domain, x: &Point, eps_abs: f64) -> Result<()> {
    if !d.contains(x) {
        return Err(Error::InvalidArgument(format!(
            "walk origin {x} is not interior to the domain"
        )));
    }
    if d.distance_to_boundary(x)? <= eps_abs {
        return Err(Error::InvalidArgument(format!(
            "walk origin {x} lies inside the ε-shell (width {eps_abs:.3e}); the walk \
             would terminate immediately"
        )));
    }
    Ok(())
}

/// Runs one walk from x. The per-step draw order is fixed: first the jump
/// direction, then (killing variant only) the survival variate, so the two
/// variants consume identical direction sequences from a given stream.
pub fn wos_walk(
    d: &Domain,
    mu: f64,
    x: &Point,
    rng: &mut RngStream,
    cfg: &WosConfig,
) -> Result<WalkOutcome> {
    cfg.validate()?;
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mu must be finite and nonnegative, got {mu}"
        )));
    }
    let eps_abs = cfg.epsilon_shell * d.diameter();
    check_start(d, x, eps_abs)?;
    walk_inner(d, mu, x, rng, eps_abs, cfg)
}

fn walk_inner(
    d: &Domain,
    mu: f64,
    x: &Point,
    rng: &mut RngStream,
    eps_abs: f64,
    cfg: &WosConfig,
) -> Result<WalkOutcome> {
    let m = d.dim();
    let mut current = x.clone();
    let mut weight = 1.0f64;
    let mut steps = 0usize;
    loop {
        let dist = d.distance_to_boundary(&current)?;
        if dist <= eps_abs || !d.contains(&current) {
            return Ok(WalkOutcome {
                boundary_point: d.project_to_boundary_total(&current),
                weight,
                steps,
                terminated: Termination::Shell,
            });
        }
        if steps >= cfg.max_steps {
            return Ok(WalkOutcome {
                boundary_point: current,
                weight,
                steps,
                terminated: Termination::MaxSteps,
            });
        }
        let rho = cfg.jump_fraction * dist;
        let direction = sample_unit_sphere(m, rng)?;
        let a = coeff(CoeffKind::Sphere, m, mu * rho)?;
        match cfg.variant {
            WosVariant::Weighted => weight /= a,
            WosVariant::Killing => {
                if rng.uniform() >= 1.0 / a {
                    return Ok(WalkOutcome {
                        boundary_point: current,
                        weight: 1.0,
                        steps: steps + 1,
                        terminated: Termination::Killed,
                    });
                }
            }
        }
        current = current.translated(direction.coords(), rho);
        steps += 1;
    }
}

/// Estimates the Dirichlet solution u(x) for boundary data g by averaging
/// weight · g(boundary point) over `cfg.walks` independent walks.
///
/// Walks run in parallel; walk k draws from the stream keyed by k, and the
/// reduction is a sequential pass over the walk-ordered outcomes, so the
/// result is bit-identical for any worker count. Killed walks score zero
/// and stay in the average; capped walks are excluded and reported.
pub fn wos_solve(
    d: &Domain,
    g: &ScalarField,
    mu: f64,
    x: &Point,
    cfg: &WosConfig,
) -> Result<WosSolution> {
    cfg.validate()?;
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mu must be finite and nonnegative, got {mu}"
        )));
    }
    if g.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: g.dim(),
        });
    }
    let eps_abs = cfg.epsilon_shell * d.diameter();
    check_start(d, x, eps_abs)?;

    let outcomes: Vec<(f64, u32, Termination, f64)> = (0..cfg.walks)
        .into_par_iter()
        .map(|k| {
            let mut rng = RngStream::new(cfg.seed, k);
            let outcome = walk_inner(d, mu, x, &mut rng, eps_abs, cfg)?;
            let score = match outcome.terminated {
                Termination::Shell => outcome.weight * g.evaluate(&outcome.boundary_point)?,
                Termination::Killed | Termination::MaxSteps => 0.0,
            };
            Ok((score, outcome.steps as u32, outcome.terminated, outcome.weight))
        })
        .collect::<Result<_>>()?;

    // Welford accumulation: exact zero variance when every score agrees,
    // which the single-jump and μ = 0 cases produce.
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    let mut included = 0u64;
    let mut killed = 0u64;
    let mut capped = 0u64;
    let mut total_steps = 0u64;
    let mut capped_weight = 0.0f64;
    for &(score, steps, terminated, weight) in &outcomes {
        total_steps += steps as u64;
        if terminated == Termination::MaxSteps {
            capped += 1;
            capped_weight = capped_weight.max(weight);
            continue;
        }
        if terminated == Termination::Killed {
            killed += 1;
        }
        included += 1;
        let delta = score - mean;
        mean += delta / included as f64;
        m2 += delta * (score - mean);
    }
    let effective = cfg.walks - capped;
    if effective == 0 {
        return Err(Error::NonFinite(
            "walk-on-spheres estimate: every walk hit the step cap".into(),
        ));
    }
    let nf = effective as f64;
    let var = if effective > 1 {
        (m2 / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    let mut notes = Vec::new();
    let max_steps_fraction = capped as f64 / cfg.walks as f64;
    if max_steps_fraction > 0.01 {
        notes.push(format!(
            "warning: {:.2}% of walks hit the step cap of {} and were excluded; each \
             carried weight at most {capped_weight:.3e}, so the truncated contribution \
             is bounded by that weight times the boundary maximum of |g|",
            100.0 * max_steps_fraction,
            cfg.max_steps
        ));
    }
    Ok(WosSolution {
        estimate: MeanEstimate {
            value: mean,
            std_error: (var / nf).sqrt(),
            samples: effective,
            method: MeanMethod::MonteCarlo,
        },
        walks: cfg.walks,
        killed_fraction: killed as f64 / cfg.walks as f64,
        mean_steps: total_steps as f64 / cfg.walks as f64,
        max_steps_fraction,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_control, make_fundamental, make_u_radial, ControlKind,
        FundamentalSign};

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn unit_ball() -> Domain {
        Domain::ball(pt(&[0.0, 0.0, 0.0]), 1.0).unwrap()
    }

    #[test]
    fn center_start_with_full_jump_lands_on_the_boundary_in_one_step() {
        // From the center of a ball with α = 1 the first jump reaches the
        // boundary exactly, so the weighted estimate for g ≡ 1 is the
        // deterministic value 1/a°(μ).
        let cfg = WosConfig {
            walks: 2_000,
            ..WosConfig::default()
        };
        let g = make_control(3, ControlKind::Constant(1.0)).unwrap();
        let sol = wos_solve(&unit_ball(), &g, 1.0, &pt(&[0.0, 0.0, 0.0]), &cfg).unwrap();
        let oracle = 1.0 / 1f64.sinh();
        assert!((sol.estimate.value - oracle).abs() < 1e-12, "{}", sol.estimate.value);
        assert_eq!(sol.estimate.std_error, 0.0);
        assert!((sol.mean_steps - 1.0).abs() < 1e-12);
        assert_eq!(sol.killed_fraction, 0.0);

        let mut rng = RngStream::new(0, 0);
        let outcome = wos_walk(&unit_ball(), 1.0, &pt(&[0.0, 0.0, 0.0]), &mut rng, &cfg)
            .unwrap();
        assert_eq!(outcome.terminated, Termination::Shell);
        assert_eq!(outcome.steps, 1);
        assert!((outcome.weight - oracle).abs() < 1e-12);
        let r: f64 = outcome.boundary_point.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn radial_boundary_data_reproduces_the_radial_solution() {
        // g = U|∂B with U(y) = sinh|y|/|y|; the solution is U itself.
        let u = make_u_radial(3, 1.0, pt(&[0.0, 0.0, 0.0])).unwrap();
        let cfg = WosConfig {
            walks: 60_000,
            ..WosConfig::default()
        };
        let x = pt(&[0.3, 0.2, 0.1]);
        let rho = x.dist(&pt(&[0.0, 0.0, 0.0]));
        let expected = rho.sinh() / rho;
        let sol = wos_solve(&unit_ball(), &u, 1.0, &x, &cfg).unwrap();
        assert!(
            (sol.estimate.value - expected).abs() <= 3.0 * sol.estimate.std_error,
            "{} vs {expected} (sigma {})",
            sol.estimate.value,
            sol.estimate.std_error
        );
        assert!(sol.estimate.std_error < 0.01);
    }

    #[test]
    fn constant_boundary_data_gives_the_reciprocal_coefficient() {
        // With α < 1 the walk is genuinely multi-step; the solution of
        // g ≡ 1 is a°(μ|x|)/a°(μ), equal to 1/a°(1) ≈ 0.8509181 at the
        // center.
        let g = make_control(3, ControlKind::Constant(1.0)).unwrap();
        let cfg = WosConfig {
            walks: 60_000,
            jump_fraction: 0.7,
            ..WosConfig::default()
        };
        let sol = wos_solve(&unit_ball(), &g, 1.0, &pt(&[0.0, 0.0, 0.0]), &cfg).unwrap();
        let oracle = 0.8509181282393216;
        assert!(
            (sol.estimate.value - oracle).abs() <= 3.0 * sol.estimate.std_error,
            "{} vs {oracle}",
            sol.estimate.value
        );
        assert!(sol.mean_steps > 3.0);
    }

    #[test]
    fn exterior_pole_fundamental_solution_is_recovered_at_the_center() {
        // E⁻ with pole at (3,0,0) is panharmonic inside the unit ball;
        // its value at the origin is e^{-3}/3.
        let g = make_fundamental(1.0, pt(&[3.0, 0.0, 0.0]), FundamentalSign::Minus).unwrap();
        let cfg = WosConfig {
            walks: 60_000,
            jump_fraction: 0.8,
            ..WosConfig::default()
        };
        let sol = wos_solve(&unit_ball(), &g, 1.0, &pt(&[0.0, 0.0, 0.0]), &cfg).unwrap();
        let oracle = (-3.0f64).exp() / 3.0;
        assert!(
            (sol.estimate.value - oracle).abs() <= 3.0 * sol.estimate.std_error,
            "{} vs {oracle} (sigma {})",
            sol.estimate.value,
            sol.estimate.std_error
        );
    }

    #[test]
    fn weighted_and_killing_variants_agree() {
        let g = make_control(3, ControlKind::Constant(1.0)).unwrap();
        let base = WosConfig {
            walks: 80_000,
            jump_fraction: 0.7,
            ..WosConfig::default()
        };
        let x = pt(&[0.2, 0.0, 0.0]);
        let weighted = wos_solve(&unit_ball(), &g, 1.0, &x, &base).unwrap();
        let killing_cfg = WosConfig {
            variant: WosVariant::Killing,
            seed: 1,
            ..base
        };
        let killing = wos_solve(&unit_ball(), &g, 1.0, &x, &killing_cfg).unwrap();
        let sigma = weighted
            .estimate
            .std_error
            .hypot(killing.estimate.std_error);
        assert!(
            (weighted.estimate.value - killing.estimate.value).abs() <= 3.0 * sigma,
            "weighted {} vs killing {}",
            weighted.estimate.value,
            killing.estimate.value
        );
        assert!(killing.killed_fraction > 0.0);
        // Killing survivors carry weight exactly 1, so the estimate is a
        // fraction of boundary scores.
        assert!(killing.estimate.value < 1.0);
    }

    #[test]
    fn estimates_are_bit_identical_across_thread_pools() {
        let g = make_u_radial(3, 1.0, pt(&[0.0, 0.0, 0.0])).unwrap();
        let cfg = WosConfig {
            walks: 20_000,
            jump_fraction: 0.9,
            seed: 5,
            ..WosConfig::default()
        };
        let x = pt(&[0.1, -0.2, 0.3]);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| wos_solve(&unit_ball(), &g, 1.0, &x, &cfg).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.estimate.value.to_bits(), four.estimate.value.to_bits());
        assert_eq!(
            one.estimate.std_error.to_bits(),
            four.estimate.std_error.to_bits()
        );
    }

    #[test]
    fn mu_zero_recovers_classical_harmonic_walk_on_spheres() {
        // Weights are identically 1, so g ≡ c solves to exactly c.
        let g = make_control(3, ControlKind::Constant(2.5)).unwrap();
        let cfg = WosConfig {
            walks: 5_000,
            jump_fraction: 0.6,
            ..WosConfig::default()
        };
        let sol = wos_solve(&unit_ball(), &g, 0.0, &pt(&[0.4, 0.0, 0.0]), &cfg).unwrap();
        assert_eq!(sol.estimate.value, 2.5);
        assert_eq!(sol.estimate.std_error, 0.0);
        assert_eq!(sol.killed_fraction, 0.0);
    }

    #[test]
    fn estimate_respects_the_boundary_maximum() {
        let u = make_u_radial(3, 1.0, pt(&[0.0, 0.0, 0.0])).unwrap();
        let cfg = WosConfig {
            walks: 30_000,
            jump_fraction: 0.75,
            ..WosConfig::default()
        };
        let sol = wos_solve(&unit_ball(), &u, 1.0, &pt(&[0.5, 0.1, 0.0]), &cfg).unwrap();
        let boundary_max = 1f64.sinh();
        assert!(sol.estimate.value <= boundary_max + 3.0 * sol.estimate.std_error);
        assert!(sol.estimate.value > 0.0);
    }

    #[test]
    fn preconditions_and_step_caps_are_enforced() {
        let g = make_control(3, ControlKind::Constant(1.0)).unwrap();
        let cfg = WosConfig::default();
        // Exterior start.
        assert!(wos_solve(&unit_ball(), &g, 1.0, &pt(&[2.0, 0.0, 0.0]), &cfg).is_err());
        // Start inside the shell.
        assert!(wos_solve(&unit_ball(), &g, 1.0, &pt(&[0.9999, 0.0, 0.0]), &cfg).is_err());
        // Invalid configs.
        let bad = WosConfig {
            epsilon_shell: 0.0,
            ..WosConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = WosConfig {
            jump_fraction: 1.5,
            ..WosConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = WosConfig {
            walks: 0,
            ..WosConfig::default()
        };
        assert!(bad.validate().is_err());
        // A step cap of 1 with a small jump fraction strands nearly every
        // walk; the capped fraction is reported and the remainder still
        // averages, or the run errors out when no walk finishes.
        let cramped = WosConfig {
            walks: 200,
            max_steps: 1,
            jump_fraction: 0.5,
            ..WosConfig::default()
        };
        match wos_solve(&unit_ball(), &g, 1.0, &pt(&[0.3, 0.0, 0.0]), &cramped) {
            Ok(sol) => {
                assert!(sol.max_steps_fraction > 0.01);
                assert!(!sol.notes.is_empty());
            }
            Err(Error::NonFinite(_)) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn halving_the_shell_moves_the_estimate_within_noise() {
        let g = make_control(3, ControlKind::Constant(1.0)).unwrap();
        let x = pt(&[0.0, 0.0, 0.0]);
        let run = |eps: f64, seed: u64| {
            let cfg = WosConfig {
                epsilon_shell: eps,
                walks: 50_000,
                jump_fraction: 0.7,
                seed,
                ..WosConfig::default()
            };
            wos_solve(&unit_ball(), &g, 1.0, &x, &cfg).unwrap()
        };
        let coarse = run(2e-3, 0);
        let fine = run(1e-3, 1);
        let sigma = coarse.estimate.std_error.hypot(fine.estimate.std_error);
        assert!(
            (coarse.estimate.value - fine.estimate.value).abs() <= 3.0 * sigma,
            "{} vs {}",
            coarse.estimate.value,
            fine.estimate.value
        );
    }
}
