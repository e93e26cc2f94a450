//! Points, domains, and reproducible sampling.
//!
//! Domains are closed-form shapes only (ball, axis-aligned box, spherical
//! shell, axis-aligned ellipsoid) so that boundary distance and projection
//! are exact rather than iteratively approximated against an implicit
//! surface. The shell is deliberately included with a *disconnected
//! complement*, which the ball-characterization experiments use as a
//! hypothesis-violating case.
//!
//! [`RngStream`] is keyed by `(master_seed, stream_index)`: the k-th variate
//! of a stream is a pure function of the key and k, so parallel consumers
//! that own disjoint stream indices reproduce bit-identically regardless of
//! scheduling or worker count.

use crate::error::{Error, Result};
use crate::specfun::gamma_half;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::fmt;

/// A point in ℝ^m, m ≥ 2, with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Validates dimension (≥ 2) and finiteness.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "points must have dimension >= 2, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("point coordinates".into()));
        }
        Ok(Point { coords })
    }

    /// Construction for internal arithmetic whose inputs are already valid.
    pub(crate) fn raw(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2 && coords.iter().all(|c| c.is_finite()));
        Point { coords }
    }

    /// The origin of ℝ^m.
    pub fn origin(dim: usize) -> Result<Self> {
        Point::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Euclidean distance to another point of the same dimension.
    pub fn dist(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// self + scale · direction.
    pub fn translated(&self, direction: &[f64], scale: f64) -> Point {
        debug_assert_eq!(self.dim(), direction.len());
        Point::raw(
            self.coords
                .iter()
                .zip(direction)
                .map(|(c, d)| c + scale * d)
                .collect(),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Deterministic random stream keyed by `(master_seed, stream_index)`.
///
/// Two streams with the same key produce bit-identical variate sequences;
/// distinct stream indices give statistically independent streams of the
/// same master seed. Backed by ChaCha8 with a key derived from both fields.
#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut state = master_seed
            ^ stream_index
                .wrapping_mul(0xD1B5_4A32_D192_ED03)
                .rotate_left(23);
        let mut seed = [0u8; 32];
        for chunk in seed.chunks_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        RngStream {
            master_seed,
            stream_index,
            rng: ChaCha8Rng::from_seed(seed),
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform in [a, b).
    pub fn uniform_in(&mut self, a: f64, b: f64) -> f64 {
        a + (b - a) * self.uniform()
    }

    /// Standard normal variate.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

/// Volume of the unit ball in ℝ^m: π^{m/2} / Γ(m/2 + 1).
pub fn unit_ball_volume(m: usize) -> f64 {
    std::f64::consts::PI.powf(m as f64 / 2.0) / gamma_half(m as u32 + 2)
}

/// Surface area of the unit sphere in ℝ^m: ω_m = 2 π^{m/2} / Γ(m/2).
pub fn unit_sphere_area(m: usize) -> f64 {
    m as f64 * unit_ball_volume(m)
}

/// Uniform direction on the unit sphere S^{m-1} via normalized Gaussians.
pub fn sample_unit_sphere(m: usize, rng: &mut RngStream) -> Result<Point> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "sphere sampling requires m >= 2, got {m}"
        )));
    }
    loop {
        let coords: Vec<f64> = (0..m).map(|_| rng.normal()).collect();
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return Ok(Point::raw(coords.into_iter().map(|c| c / norm).collect()));
        }
    }
}

/// A bounded domain in ℝ^m with exact boundary geometry.
///
/// Displays as the specification string [`parse_domain`] accepts, so a
/// rendered domain parses back to an equal one.
#[derive(Clone, Debug)]
pub enum Domain {
    Ball {
        center: Point,
        radius: f64,
    },
    Box {
        lo: Point,
        hi: Point,
    },
    Shell {
        center: Point,
        r_in: f64,
        r_out: f64,
    },
    Ellipsoid {
        center: Point,
        semi_axes: Vec<f64>,
    },
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn coords(p: &Point) -> String {
            p.coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        fn center_suffix(center: &Point) -> String {
            if center.coords().iter().all(|&c| c == 0.0) {
                String::new()
            } else {
                format!("@{}", coords(center))
            }
        }
        match self {
            Domain::Ball { center, radius } => {
                write!(f, "ball:{radius}{}", center_suffix(center))
            }
            Domain::Box { lo, hi } => write!(f, "box:{}/{}", coords(lo), coords(hi)),
            Domain::Shell {
                center,
                r_in,
                r_out,
            } => write!(f, "shell:{r_in},{r_out}{}", center_suffix(center)),
            Domain::Ellipsoid { center, semi_axes } => {
                let axes = semi_axes
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                write!(f, "ellipsoid:{axes}{}", center_suffix(center))
            }
        }
    }
}

impl Domain {
    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Domain::Ball { center, radius })
    }

    /// Axis-aligned box with lo strictly below hi in every coordinate.
    pub fn cuboid(lo: Point, hi: Point) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch {
                expected: lo.dim(),
                got: hi.dim(),
            });
        }
        if lo
            .coords()
            .iter()
            .zip(hi.coords())
            .any(|(a, b)| !(a < b))
        {
            return Err(Error::InvalidArgument(
                "box requires lo < hi componentwise".into(),
            ));
        }
        Ok(Domain::Box { lo, hi })
    }

    pub fn shell(center: Point, r_in: f64, r_out: f64) -> Result<Self> {
        if !(r_in.is_finite() && r_out.is_finite() && 0.0 < r_in && r_in < r_out) {
            return Err(Error::InvalidArgument(format!(
                "shell requires 0 < r_in < r_out, got ({r_in}, {r_out})"
            )));
        }
        Ok(Domain::Shell {
            center,
            r_in,
            r_out,
        })
    }

    pub fn ellipsoid(center: Point, semi_axes: Vec<f64>) -> Result<Self> {
        if semi_axes.len() != center.dim() {
            return Err(Error::DimensionMismatch {
                expected: center.dim(),
                got: semi_axes.len(),
            });
        }
        if semi_axes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::InvalidArgument(
                "ellipsoid semi-axes must be positive".into(),
            ));
        }
        Ok(Domain::Ellipsoid { center, semi_axes })
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Ball { center, .. }
            | Domain::Shell { center, .. }
            | Domain::Ellipsoid { center, .. } => center.dim(),
            Domain::Box { lo, .. } => lo.dim(),
        }
    }

    /// The designated center: the defining center for ball, shell, and
    /// ellipsoid; the midpoint for a box.
    pub fn center(&self) -> Point {
        match self {
            Domain::Ball { center, .. }
            | Domain::Shell { center, .. }
            | Domain::Ellipsoid { center, .. } => center.clone(),
            Domain::Box { lo, hi } => Point::raw(
                lo.coords()
                    .iter()
                    .zip(hi.coords())
                    .map(|(a, b)| 0.5 * (a + b))
                    .collect(),
            ),
        }
    }

    /// Strict interior membership. Points of a different dimension are
    /// never contained.
    pub fn contains(&self, x: &Point) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        match self {
            Domain::Ball { center, radius } => x.dist(center) < *radius,
            Domain::Box { lo, hi } => x
                .coords()
                .iter()
                .zip(lo.coords().iter().zip(hi.coords()))
                .all(|(c, (a, b))| a < c && c < b),
            Domain::Shell {
                center,
                r_in,
                r_out,
            } => {
                let rho = x.dist(center);
                *r_in < rho && rho < *r_out
            }
            Domain::Ellipsoid { center, semi_axes } => {
                x.coords()
                    .iter()
                    .zip(center.coords().iter().zip(semi_axes))
                    .map(|(c, (o, a))| {
                        let s = (c - o) / a;
                        s * s
                    })
                    .sum::<f64>()
                    < 1.0
            }
        }
    }

    /// Euclidean distance from x to the boundary set ∂D. Zero exactly on
    /// the boundary, positive on both sides of it.
    pub fn distance_to_boundary(&self, x: &Point) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match self {
            Domain::Ball { center, radius } => (radius - x.dist(center)).abs(),
            Domain::Box { lo, hi } => {
                let mut inside_min = f64::INFINITY;
                let mut outside_sq = 0.0;
                let mut outside = false;
                for ((c, a), b) in x.coords().iter().zip(lo.coords()).zip(hi.coords()) {
                    if c < a {
                        outside = true;
                        outside_sq += (a - c) * (a - c);
                    } else if c > b {
                        outside = true;
                        outside_sq += (c - b) * (c - b);
                    } else {
                        inside_min = inside_min.min((c - a).min(b - c));
                    }
                }
                if outside {
                    outside_sq.sqrt()
                } else {
                    inside_min
                }
            }
            Domain::Shell {
                center,
                r_in,
                r_out,
            } => {
                let rho = x.dist(center);
                (rho - r_in).abs().min((rho - r_out).abs())
            }
            Domain::Ellipsoid { center, semi_axes } => {
                let offset: Vec<f64> = x
                    .coords()
                    .iter()
                    .zip(center.coords())
                    .map(|(c, o)| c - o)
                    .collect();
                let closest = ellipsoid_closest_offset(semi_axes, &offset);
                offset
                    .iter()
                    .zip(&closest)
                    .map(|(p, q)| (p - q) * (p - q))
                    .sum::<f64>()
                    .sqrt()
            }
        })
    }

    /// Nearest boundary point for an interior x; a point already on the
    /// boundary is returned unchanged, and exterior points are rejected.
    /// Deterministic tie-breaking: at a ball or shell center the first
    /// coordinate axis is chosen; box face ties take the lowest coordinate
    /// index.
    pub fn project_to_boundary(&self, x: &Point) -> Result<Point> {
        self.check_dim(x)?;
        if !self.contains(x) {
            if self.distance_to_boundary(x)? > 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "boundary projection requires an interior point, got exterior {x}"
                )));
            }
            return Ok(x.clone());
        }
        Ok(self.project_to_boundary_total(x))
    }

    /// Nearest boundary point for any position, exterior included. The
    /// walk-on-spheres shell test needs this: a full-distance jump can
    /// land a few ulps outside the domain.
    pub(crate) fn project_to_boundary_total(&self, x: &Point) -> Point {
        match self {
            Domain::Ball { center, radius } => {
                project_radial(center, x, *radius)
            }
            Domain::Box { lo, hi } => {
                if self.contains(x) {
                    // Clamp the single coordinate whose face is closest.
                    let mut best = (f64::INFINITY, 0usize, 0.0f64);
                    for (i, ((c, a), b)) in
                        x.coords().iter().zip(lo.coords()).zip(hi.coords()).enumerate()
                    {
                        let (d, face) = if c - a <= b - c { (c - a, *a) } else { (b - c, *b) };
                        if d < best.0 {
                            best = (d, i, face);
                        }
                    }
                    let mut out = x.clone();
                    out.coords_mut()[best.1] = best.2;
                    out
                } else {
                    // For exterior points the nearest boundary point is the
                    // componentwise clamp onto the box.
                    Point::raw(
                        x.coords()
                            .iter()
                            .zip(lo.coords())
                            .zip(hi.coords())
                            .map(|((c, a), b)| c.clamp(*a, *b))
                            .collect(),
                    )
                }
            }
            Domain::Shell {
                center,
                r_in,
                r_out,
            } => {
                let rho = x.dist(center);
                let target = if (rho - r_in).abs() <= (rho - r_out).abs() {
                    *r_in
                } else {
                    *r_out
                };
                project_radial(center, x, target)
            }
            Domain::Ellipsoid { center, semi_axes } => {
                let offset: Vec<f64> = x
                    .coords()
                    .iter()
                    .zip(center.coords())
                    .map(|(c, o)| c - o)
                    .collect();
                let closest = ellipsoid_closest_offset(semi_axes, &offset);
                Point::raw(
                    center
                        .coords()
                        .iter()
                        .zip(&closest)
                        .map(|(o, q)| o + q)
                        .collect(),
                )
            }
        }
    }

    /// Lebesgue volume.
    pub fn volume(&self) -> f64 {
        match self {
            Domain::Ball { center, radius } => {
                unit_ball_volume(center.dim()) * radius.powi(center.dim() as i32)
            }
            Domain::Box { lo, hi } => lo
                .coords()
                .iter()
                .zip(hi.coords())
                .map(|(a, b)| b - a)
                .product(),
            Domain::Shell {
                center,
                r_in,
                r_out,
            } => {
                let m = center.dim() as i32;
                unit_ball_volume(center.dim()) * (r_out.powi(m) - r_in.powi(m))
            }
            Domain::Ellipsoid { center, semi_axes } => {
                unit_ball_volume(center.dim()) * semi_axes.iter().product::<f64>()
            }
        }
    }

    /// Radius of the ball with the same volume.
    pub fn matched_radius(&self) -> f64 {
        (self.volume() / unit_ball_volume(self.dim())).powf(1.0 / self.dim() as f64)
    }

    /// Diameter of the closure.
    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Ball { radius, .. } => 2.0 * radius,
            Domain::Box { lo, hi } => lo.dist(hi),
            Domain::Shell { r_out, .. } => 2.0 * r_out,
            Domain::Ellipsoid { semi_axes, .. } => {
                2.0 * semi_axes.iter().cloned().fold(0.0, f64::max)
            }
        }
    }

    /// Tight axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            Domain::Ball { center, radius } => (
                Point::raw(center.coords().iter().map(|c| c - radius).collect()),
                Point::raw(center.coords().iter().map(|c| c + radius).collect()),
            ),
            Domain::Box { lo, hi } => (lo.clone(), hi.clone()),
            Domain::Shell { center, r_out, .. } => (
                Point::raw(center.coords().iter().map(|c| c - r_out).collect()),
                Point::raw(center.coords().iter().map(|c| c + r_out).collect()),
            ),
            Domain::Ellipsoid { center, semi_axes } => (
                Point::raw(
                    center
                        .coords()
                        .iter()
                        .zip(semi_axes)
                        .map(|(c, a)| c - a)
                        .collect(),
                ),
                Point::raw(
                    center
                        .coords()
                        .iter()
                        .zip(semi_axes)
                        .map(|(c, a)| c + a)
                        .collect(),
                ),
            ),
        }
    }

    /// Whether the complement of the closure is connected. False for the
    /// shell: its hole is walled off, which violates the hypothesis of the
    /// exterior-probe characterization.
    pub fn complement_connected(&self) -> bool {
        !matches!(self, Domain::Shell { .. })
    }

    /// The ball view, if this domain is a ball.
    pub fn as_ball(&self) -> Option<(&Point, f64)> {
        match self {
            Domain::Ball { center, radius } => Some((center, *radius)),
            _ => None,
        }
    }

    /// Uniform sample from the interior by rejection from the bounding box.
    pub fn sample_interior(&self, rng: &mut RngStream) -> Result<Point> {
        let (lo, hi) = self.bounding_box();
        const MAX_ATTEMPTS: u64 = 1_000_000;
        for _ in 0..MAX_ATTEMPTS {
            let cand = Point::raw(
                lo.coords()
                    .iter()
                    .zip(hi.coords())
                    .map(|(a, b)| rng.uniform_in(*a, *b))
                    .collect(),
            );
            if self.contains(&cand) {
                return Ok(cand);
            }
        }
        Err(Error::SamplingFailed {
            attempts: MAX_ATTEMPTS,
        })
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }
}

/// Radial projection onto the sphere of the given radius about `center`;
/// the center itself maps to the first-axis pole.
fn project_radial(center: &Point, x: &Point, radius: f64) -> Point {
    let rho = x.dist(center);
    if rho == 0.0 {
        let mut out = center.clone();
        out.coords_mut()[0] += radius;
        return out;
    }
    Point::raw(
        center
            .coords()
            .iter()
            .zip(x.coords())
            .map(|(o, c)| o + (c - o) * radius / rho)
            .collect(),
    )
}

/// Closest point on the centered ellipsoid Σ (x_i/a_i)² = 1 to the query
/// offset p, solved from the Lagrange conditions. Coordinates where p is
/// zero admit off-axis minimizers (queries inside the evolute), so those
/// stationary branches are enumerated explicitly alongside the root of
///   F(t) = Σ (a_i p_i / (t + a_i²))² − 1
/// on the positive-coordinate set.
fn ellipsoid_closest_offset(axes: &[f64], p: &[f64]) -> Vec<f64> {
    let n = axes.len();
    let signs: Vec<f64> = p.iter().map(|v| if *v < 0.0 { -1.0 } else { 1.0 }).collect();
    let w: Vec<f64> = p.iter().map(|v| v.abs()).collect();
    let positive: Vec<usize> = (0..n).filter(|&i| w[i] > 0.0).collect();
    let zero: Vec<usize> = (0..n).filter(|&i| w[i] == 0.0).collect();

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |candidate: Vec<f64>| {
        let d2: f64 = candidate
            .iter()
            .zip(&w)
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        if best.as_ref().map_or(true, |(b, _)| d2 < *b) {
            best = Some((d2, candidate));
        }
    };

    if positive.is_empty() {
        // Query at the exact center: nearest boundary point lies along the
        // shortest axis.
        let j = (0..n)
            .min_by(|&a, &b| axes[a].partial_cmp(&axes[b]).unwrap())
            .unwrap();
        let mut x = vec![0.0; n];
        x[j] = axes[j];
        consider(x);
    } else {
        // Main branch: positive coordinates follow the Lagrange root, zero
        // coordinates stay zero.
        let t = lagrange_root(axes, &w, &positive);
        let mut x = vec![0.0; n];
        for &i in &positive {
            x[i] = axes[i] * axes[i] * w[i] / (t + axes[i] * axes[i]);
        }
        consider(x);

        // Off-axis branches: a zero coordinate j may leave the axis when its
        // semi-axis is strictly shorter than every positive one.
        let min_positive_axis = positive
            .iter()
            .map(|&i| axes[i])
            .fold(f64::INFINITY, f64::min);
        for &j in &zero {
            if axes[j] >= min_positive_axis {
                continue;
            }
            let aj2 = axes[j] * axes[j];
            let mut norm2 = 0.0;
            let mut x = vec![0.0; n];
            for &i in &positive {
                let denom = axes[i] * axes[i] - aj2;
                let xi = axes[i] * axes[i] * w[i] / denom;
                x[i] = xi;
                let s = xi / axes[i];
                norm2 += s * s;
            }
            if norm2 < 1.0 {
                x[j] = axes[j] * (1.0 - norm2).sqrt();
                consider(x);
            }
        }
    }

    let mut x = best.expect("ellipsoid projection candidates").1;
    for i in 0..n {
        x[i] *= signs[i];
    }
    x
}

/// Bisection for the decreasing F(t) above on (−min a_i², ∞), restricted to
/// the given index set (all weights positive there).
fn lagrange_root(axes: &[f64], w: &[f64], idx: &[usize]) -> f64 {
    let f = |t: f64| -> f64 {
        idx.iter()
            .map(|&i| {
                let r = axes[i] * w[i] / (t + axes[i] * axes[i]);
                r * r
            })
            .sum::<f64>()
            - 1.0
    };
    let min_axis_sq = idx
        .iter()
        .map(|&i| axes[i] * axes[i])
        .fold(f64::INFINITY, f64::min);
    // Lower bracket: approach the pole at −min a² until F is positive.
    let mut gap = min_axis_sq * 1e-6;
    let mut lo = -min_axis_sq + gap;
    while f(lo) <= 0.0 && gap > f64::MIN_POSITIVE {
        gap *= 1e-3;
        lo = -min_axis_sq + gap;
    }
    // Upper bracket: F < 0 for t beyond the weighted norm.
    let r: f64 = idx
        .iter()
        .map(|&i| {
            let s = axes[i] * w[i];
            s * s
        })
        .sum::<f64>()
        .sqrt();
    let mut hi = r.max(1.0);
    while f(hi) >= 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Parses a comma-separated coordinate list into a point.
pub fn parse_point(text: &str) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("invalid coordinate '{part}' in '{text}'")))
        })
        .collect::<Result<Vec<f64>>>()?;
    Point::new(coords)
}

/// Parses a domain specification:
/// `ball:<r>[@cx,cy,...]`, `box:<lo...>/<hi...>`, `shell:<rin>,<rout>`,
/// `ellipsoid:<a,b,...>`. The shell and ellipsoid forms accept the same
/// optional `@cx,cy,...` center suffix as ball. Forms without explicit
/// coordinates are centered at the origin of dimension m; coordinate-bearing
/// forms must match m.
pub fn parse_domain(text: &str, m: usize) -> Result<Domain> {
    let (shape, rest) = text.split_once(':').ok_or_else(|| {
        Error::Parse(format!(
            "domain spec '{text}' needs the form shape:parameters (shapes: ball, box, \
             shell, ellipsoid)"
        ))
    })?;
    let scalar = |part: &str| -> Result<f64> {
        part.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("invalid number '{part}' in '{text}'")))
    };
    let check_dim = |p: &Point| -> Result<()> {
        if p.dim() != m {
            return Err(Error::Parse(format!(
                "domain spec '{text}' has {}-dimensional coordinates but dimension {m} \
                 was requested",
                p.dim()
            )));
        }
        Ok(())
    };
    let (body, center) = match rest.split_once('@') {
        Some((b, c)) => {
            let center = parse_point(c)?;
            check_dim(&center)?;
            (b, center)
        }
        None => (rest, Point::origin(m)?),
    };
    match shape {
        "ball" => Domain::ball(center, scalar(body)?),
        "box" => {
            let (lo_text, hi_text) = rest.split_once('/').ok_or_else(|| {
                Error::Parse(format!("box spec '{text}' needs the form box:<lo...>/<hi...>"))
            })?;
            let lo = parse_point(lo_text)?;
            let hi = parse_point(hi_text)?;
            check_dim(&lo)?;
            check_dim(&hi)?;
            Domain::cuboid(lo, hi)
        }
        "shell" => {
            let (inner, outer) = body.split_once(',').ok_or_else(|| {
                Error::Parse(format!("shell spec '{text}' needs the form shell:<rin>,<rout>"))
            })?;
            Domain::shell(center, scalar(inner)?, scalar(outer)?)
        }
        "ellipsoid" => {
            let axes = body
                .split(',')
                .map(|part| scalar(part))
                .collect::<Result<Vec<f64>>>()?;
            if axes.len() != m {
                return Err(Error::Parse(format!(
                    "ellipsoid spec '{text}' has {} axes but dimension {m} was requested",
                    axes.len()
                )));
            }
            Domain::ellipsoid(center, axes)
        }
        other => Err(Error::Parse(format!(
            "unknown domain shape '{other}'; known: ball, box, shell, ellipsoid"
        ))),
    }
}
