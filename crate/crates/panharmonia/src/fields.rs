//! Scalar fields with a declared analytic class.
//!
//! A [`ScalarField`] packages an evaluator with the metadata the rest of the
//! crate keys on: dimension, the class it is claimed to belong to, the
//! panharmonicity parameter when one applies, and any singular points that
//! quadrature and sampling must stay away from.
//!
//! The built-in catalogue covers the exact solutions used throughout:
//! the radial panharmonic profile a°(μ|x − c|), the panharmonic fundamental
//! solutions e^{±μρ}/ρ in three dimensions, the harmonic fundamental
//! solution, plane waves e^{μ⟨x, d⟩}, and polynomial controls including a
//! deliberate counterexample (|x|²) that is neither harmonic nor
//! panharmonic for any parameter.

use crate::error::{Error, Result};
use crate::geometry::{unit_sphere_area, Point};
use crate::specfun::{coeff, CoeffKind};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Declared analytic class of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldClass {
    /// Solves ∇²u = μ²u for the field's μ > 0.
    Panharmonic,
    /// Solves ∇²u = 0.
    Harmonic,
    /// Known to satisfy neither equation.
    Neither,
    /// No claim attached.
    Unknown,
}

impl fmt::Display for FieldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FieldClass::Panharmonic => "panharmonic",
            FieldClass::Harmonic => "harmonic",
            FieldClass::Neither => "neither",
            FieldClass::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Clearance below which evaluation near a singular point is refused.
const SINGULARITY_CLEARANCE: f64 = 1e-12;

/// A scalar field on ℝ^m with class metadata and singularity bookkeeping.
#[derive(Clone)]
pub struct ScalarField {
    dim: usize,
    class: FieldClass,
    mu: Option<f64>,
    label: String,
    singular_points: Vec<Point>,
    eval: Arc<dyn Fn(&Point) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("dim", &self.dim)
            .field("class", &self.class)
            .field("mu", &self.mu)
            .field("label", &self.label)
            .field("singular_points", &self.singular_points)
            .finish_non_exhaustive()
    }
}

impl ScalarField {
    /// Wraps an arbitrary evaluator. `mu` carries the parameter for
    /// panharmonic fields and is `None` when no parameter applies.
    pub fn from_fn<F>(
        dim: usize,
        class: FieldClass,
        mu: Option<f64>,
        label: impl Into<String>,
        eval: F,
    ) -> Result<Self>
    where
        F: Fn(&Point) -> f64 + Send + Sync + 'static,
    {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "fields require dimension >= 2, got {dim}"
            )));
        }
        if let Some(mu) = mu {
            if !(mu.is_finite() && mu >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "field parameter mu must be finite and nonnegative, got {mu}"
                )));
            }
        }
        Ok(ScalarField {
            dim,
            class,
            mu,
            label: label.into(),
            singular_points: Vec::new(),
            eval: Arc::new(eval),
        })
    }

    /// Registers singular points that evaluation must avoid.
    pub fn with_singularities(mut self, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: p.dim(),
                });
            }
        }
        self.singular_points = points;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn class(&self) -> FieldClass {
        self.class
    }

    pub fn mu(&self) -> Option<f64> {
        self.mu
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn singular_points(&self) -> &[Point] {
        &self.singular_points
    }

    /// Distance from x to the nearest singular point, infinite if none.
    pub fn min_singular_distance(&self, x: &Point) -> f64 {
        self.singular_points
            .iter()
            .map(|p| p.dist(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Evaluates the field, rejecting dimension mismatches, evaluation at
    /// (or within clearance of) a singular point, and non-finite output.
    pub fn evaluate(&self, x: &Point) -> Result<f64> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        if self.min_singular_distance(x) < SINGULARITY_CLEARANCE {
            return Err(Error::Singularity(format!(
                "field '{}' evaluated at singular point {x}",
                self.label
            )));
        }
        let v = (self.eval)(x);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!(
                "field '{}' returned {v} at {x}",
                self.label
            )));
        }
        Ok(v)
    }
}

/// Sign of the exponential in the panharmonic fundamental solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FundamentalSign {
    Plus,
    Minus,
}

/// The radial panharmonic profile U(x) = a°(μ|x − c|), entire in x.
pub fn make_u_radial(m: usize, mu: f64, center: Point) -> Result<ScalarField> {
    check_mu_positive(mu)?;
    if center.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: center.dim(),
        });
    }
    let label = format!("u_radial(mu={mu}, center={center})");
    ScalarField::from_fn(m, FieldClass::Panharmonic, Some(mu), label, move |x| {
        coeff(CoeffKind::Sphere, m, mu * x.dist(&center)).unwrap_or(f64::NAN)
    })
}

/// Panharmonic fundamental solution in three dimensions,
/// e^{±μρ} / ρ with ρ = |x − pole|.
pub fn make_fundamental(mu: f64, pole: Point, sign: FundamentalSign) -> Result<ScalarField> {
    check_mu_positive(mu)?;
    if pole.dim() != 3 {
        return Err(Error::Unsupported(format!(
            "the panharmonic fundamental solution is implemented for m = 3 only, got m = {}",
            pole.dim()
        )));
    }
    let s = match sign {
        FundamentalSign::Plus => 1.0,
        FundamentalSign::Minus => -1.0,
    };
    let tag = if s > 0.0 { "+" } else { "-" };
    let label = format!("efund{tag}(mu={mu}, pole={pole})");
    let p = pole.clone();
    ScalarField::from_fn(3, FieldClass::Panharmonic, Some(mu), label, move |x| {
        let rho = x.dist(&p);
        (s * mu * rho).exp() / rho
    })?
    .with_singularities(vec![pole])
}

/// Harmonic fundamental solution for m ≥ 3:
/// E_m(x) = [(2 − m) ω_m |x − pole|^{m−2}]^{-1}.
pub fn make_harmonic_fundamental(m: usize, pole: Point) -> Result<ScalarField> {
    if m < 3 {
        return Err(Error::Unsupported(format!(
            "the harmonic fundamental solution requires m >= 3, got m = {m}"
        )));
    }
    if pole.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: pole.dim(),
        });
    }
    let c = 1.0 / ((2.0 - m as f64) * unit_sphere_area(m));
    let label = format!("em(m={m}, pole={pole})");
    let p = pole.clone();
    ScalarField::from_fn(m, FieldClass::Harmonic, Some(0.0), label, move |x| {
        c / x.dist(&p).powi(m as i32 - 2)
    })?
    .with_singularities(vec![pole])
}

/// Plane wave e^{μ ⟨x, d⟩} for a unit direction d (the given direction is
/// normalized). Panharmonic with parameter μ.
pub fn make_plane_wave(m: usize, mu: f64, direction: Vec<f64>) -> Result<ScalarField> {
    check_mu_positive(mu)?;
    if direction.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: direction.len(),
        });
    }
    let norm = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::InvalidArgument(
            "plane wave direction must be nonzero and finite".into(),
        ));
    }
    let dir: Vec<f64> = direction.iter().map(|d| d / norm).collect();
    let label = format!(
        "planewave(mu={mu}, dir=({}))",
        dir.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    ScalarField::from_fn(m, FieldClass::Panharmonic, Some(mu), label, move |x| {
        let dot: f64 = x.coords().iter().zip(&dir).map(|(a, b)| a * b).sum();
        (mu * dot).exp()
    })
}

/// Polynomial and constant control fields.
#[derive(Clone, Debug, PartialEq)]
pub enum ControlKind {
    /// The constant c: harmonic.
    Constant(f64),
    /// The coordinate function x_i: harmonic.
    Coordinate(usize),
    /// x₁² − x₂²: harmonic but not panharmonic for any μ > 0.
    HarmonicQuadratic,
    /// |x|²: neither harmonic nor panharmonic, the standard negative
    /// control for the detector.
    SquaredNorm,
}

pub fn make_control(m: usize, kind: ControlKind) -> Result<ScalarField> {
    match kind {
        ControlKind::Constant(c) => {
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "constant field value must be finite, got {c}"
                )));
            }
            ScalarField::from_fn(
                m,
                FieldClass::Harmonic,
                Some(0.0),
                format!("const({c})"),
                move |_| c,
            )
        }
        ControlKind::Coordinate(i) => {
            if i >= m {
                return Err(Error::InvalidArgument(format!(
                    "coordinate index {i} out of range for dimension {m}"
                )));
            }
            ScalarField::from_fn(
                m,
                FieldClass::Harmonic,
                Some(0.0),
                format!("coord({i})"),
                move |x| x.coords()[i],
            )
        }
        ControlKind::HarmonicQuadratic => ScalarField::from_fn(
            m,
            FieldClass::Harmonic,
            Some(0.0),
            "harmonic_quadratic",
            |x| {
                let c = x.coords();
                c[0] * c[0] - c[1] * c[1]
            },
        ),
        ControlKind::SquaredNorm => {
            ScalarField::from_fn(m, FieldClass::Neither, None, "sqnorm", |x| {
                x.coords().iter().map(|c| c * c).sum()
            })
        }
    }
}

/// The standard catalogue for a given dimension and parameter. Fundamental
/// solutions are placed with their pole at the origin; callers analyse them
/// on domains that avoid it.
pub fn catalog(m: usize, mu: f64) -> Result<Vec<ScalarField>> {
    let origin = Point::origin(m)?;
    let mut dir = vec![0.0; m];
    dir[0] = 1.0;
    let mut fields = vec![
        make_u_radial(m, mu, origin.clone())?,
        make_plane_wave(m, mu, dir)?,
        make_control(m, ControlKind::Constant(1.0))?,
        make_control(m, ControlKind::Coordinate(0))?,
        make_control(m, ControlKind::HarmonicQuadratic)?,
        make_control(m, ControlKind::SquaredNorm)?,
    ];
    if m == 3 {
        fields.push(make_fundamental(mu, origin.clone(), FundamentalSign::Plus)?);
        fields.push(make_fundamental(mu, origin.clone(), FundamentalSign::Minus)?);
    }
    if m >= 3 {
        fields.push(make_harmonic_fundamental(m, origin)?);
    }
    Ok(fields)
}

/// Parses a field identifier.
///
/// Grammar:
///   u_radial[@c1,c2,...]      radial panharmonic profile about c
///   efund+[@p...]             e^{+μρ}/ρ, m = 3, pole p (default origin)
///   efund-[@p...]             e^{-μρ}/ρ, m = 3, pole p (default origin)
///   em[@p...]                 harmonic fundamental solution, m >= 3
///   planewave:<mu>:<d1,d2,..> plane wave with its own parameter
///   const:<c>                 constant field
///   coord:<i>                 coordinate function x_i
///   sqnorm                    |x|², the non-example
///
/// `mu` is the parameter used by the μ-dependent fields that do not carry
/// their own.
pub fn parse_field(text: &str, m: usize, mu: f64) -> Result<ScalarField> {
    let (head, at_suffix) = match text.split_once('@') {
        Some((h, s)) => (h, Some(s)),
        None => (text, None),
    };
    let anchor = match at_suffix {
        Some(s) => parse_point(s, m)?,
        None => Point::origin(m).map_err(|e| Error::Parse(e.to_string()))?,
    };
    let reject_anchor = |name: &str| -> Result<()> {
        if at_suffix.is_some() {
            return Err(Error::Parse(format!(
                "field '{name}' does not take an @-suffix"
            )));
        }
        Ok(())
    };
    match head {
        "u_radial" => make_u_radial(m, mu, anchor),
        "efund+" => make_fundamental(mu, anchor, FundamentalSign::Plus),
        "efund-" => make_fundamental(mu, anchor, FundamentalSign::Minus),
        "em" => make_harmonic_fundamental(m, anchor),
        "sqnorm" => {
            reject_anchor("sqnorm")?;
            make_control(m, ControlKind::SquaredNorm)
        }
        _ => {
            if let Some(rest) = head.strip_prefix("const:") {
                reject_anchor("const")?;
                let c: f64 = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad constant value '{rest}'")))?;
                make_control(m, ControlKind::Constant(c))
            } else if let Some(rest) = head.strip_prefix("coord:") {
                reject_anchor("coord")?;
                let i: usize = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate index '{rest}'")))?;
                make_control(m, ControlKind::Coordinate(i))
            } else if let Some(rest) = head.strip_prefix("planewave:") {
                reject_anchor("planewave")?;
                let (mu_text, dir_text) = rest.split_once(':').ok_or_else(|| {
                    Error::Parse("planewave takes the form planewave:<mu>:<d1,d2,...>".into())
                })?;
                let wave_mu: f64 = mu_text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad plane wave parameter '{mu_text}'")))?;
                let dir: Vec<f64> = dir_text
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad direction component '{s}'")))
                    })
                    .collect::<Result<_>>()?;
                make_plane_wave(m, wave_mu, dir)
            } else {
                Err(Error::Parse(format!(
                    "unknown field '{text}'; known: u_radial, efund+, efund-, em, \
                     planewave:<mu>:<dir>, const:<c>, coord:<i>, sqnorm"
                )))
            }
        }
    }
}

fn parse_point(text: &str, m: usize) -> Result<Point> {
    let coords: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad coordinate '{s}'")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != m {
        return Err(Error::Parse(format!(
            "expected {m} coordinates, got {}",
            coords.len()
        )));
    }
    Point::new(coords).map_err(|e| Error::Parse(e.to_string()))
}

fn check_mu_positive(mu: f64) -> Result<()> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mu must be finite and positive, got {mu}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    /// Central second differences: Δf(x) ≈ Σ_i (f(x+h eᵢ) − 2f(x) + f(x−h eᵢ)) / h².
    fn laplacian(f: &ScalarField, x: &Point, h: f64) -> f64 {
        let m = f.dim();
        let center = f.evaluate(x).unwrap();
        let mut acc = 0.0;
        for i in 0..m {
            let mut e = vec![0.0; m];
            e[i] = 1.0;
            let plus = f.evaluate(&x.translated(&e, h)).unwrap();
            let minus = f.evaluate(&x.translated(&e, -h)).unwrap();
            acc += (plus - 2.0 * center + minus) / (h * h);
        }
        acc
    }

    #[test]
    fn u_radial_matches_elementary_form_in_3d() {
        let f = make_u_radial(3, 1.0, pt(&[0.0, 0.0, 0.0])).unwrap();
        // sinh(1)/1, frozen.
        let v = f.evaluate(&pt(&[1.0, 0.0, 0.0])).unwrap();
        assert!((v - 1.1752011936438014).abs() < 1e-14);
        // Entire at the center: value 1 there.
        let v0 = f.evaluate(&pt(&[0.0, 0.0, 0.0])).unwrap();
        assert!((v0 - 1.0).abs() < 1e-15);
        assert_eq!(f.class(), FieldClass::Panharmonic);
        assert_eq!(f.mu(), Some(1.0));
        assert!(f.singular_points().is_empty());
    }

    #[test]
    fn panharmonic_fields_satisfy_their_equation_numerically() {
        let mu = 1.3;
        let x = pt(&[0.4, -0.2, 0.7]);
        let h = 1e-4;
        let fields = vec![
            make_u_radial(3, mu, pt(&[0.1, 0.0, -0.3])).unwrap(),
            make_plane_wave(3, mu, vec![1.0, 2.0, -1.0]).unwrap(),
            make_fundamental(mu, pt(&[3.0, 0.0, 0.0]), FundamentalSign::Plus).unwrap(),
            make_fundamental(mu, pt(&[3.0, 0.0, 0.0]), FundamentalSign::Minus).unwrap(),
        ];
        for f in fields {
            let lap = laplacian(&f, &x, h);
            let expected = mu * mu * f.evaluate(&x).unwrap();
            assert!(
                (lap - expected).abs() < 1e-4 * (1.0 + expected.abs()),
                "{}: laplacian {lap} vs mu^2 f {expected}",
                f.label()
            );
        }
    }

    #[test]
    fn harmonic_fields_have_vanishing_laplacian() {
        let x = pt(&[0.4, -0.2, 0.7]);
        let h = 1e-4;
        let fields = vec![
            make_control(3, ControlKind::Constant(2.5)).unwrap(),
            make_control(3, ControlKind::Coordinate(1)).unwrap(),
            make_control(3, ControlKind::HarmonicQuadratic).unwrap(),
            make_harmonic_fundamental(3, pt(&[3.0, 0.0, 0.0])).unwrap(),
        ];
        for f in fields {
            let lap = laplacian(&f, &x, h);
            assert!(lap.abs() < 1e-5, "{}: laplacian {lap}", f.label());
        }
    }

    #[test]
    fn squared_norm_is_neither() {
        let f = make_control(3, ControlKind::SquaredNorm).unwrap();
        assert_eq!(f.class(), FieldClass::Neither);
        let x = pt(&[0.4, -0.2, 0.7]);
        let lap = laplacian(&f, &x, 1e-4);
        // Δ|x|² = 2m = 6, not proportional to |x|² pointwise.
        assert!((lap - 6.0).abs() < 1e-5);
    }

    #[test]
    fn harmonic_fundamental_matches_newton_kernel_in_3d() {
        // For m = 3: E_3(x) = -1/(4π ρ).
        let f = make_harmonic_fundamental(3, pt(&[0.0, 0.0, 0.0])).unwrap();
        let v = f.evaluate(&pt(&[2.0, 0.0, 0.0])).unwrap();
        let oracle = -1.0 / (4.0 * std::f64::consts::PI * 2.0);
        assert!((v - oracle).abs() < 1e-15);
    }

    #[test]
    fn fundamental_solutions_in_3d_match_closed_forms() {
        let mu = 0.7;
        let pole = pt(&[0.0, 0.0, 0.0]);
        let plus = make_fundamental(mu, pole.clone(), FundamentalSign::Plus).unwrap();
        let minus = make_fundamental(mu, pole, FundamentalSign::Minus).unwrap();
        let x = pt(&[0.0, 1.5, 0.0]);
        assert!((plus.evaluate(&x).unwrap() - (mu * 1.5).exp() / 1.5).abs() < 1e-15);
        assert!((minus.evaluate(&x).unwrap() - (-mu * 1.5).exp() / 1.5).abs() < 1e-15);
        // Geometric mean of the pair is the harmonic kernel profile 1/ρ.
        let prod = plus.evaluate(&x).unwrap() * minus.evaluate(&x).unwrap();
        assert!((prod - 1.0 / (1.5 * 1.5)).abs() < 1e-15);
    }

    #[test]
    fn evaluation_guards() {
        let f = make_fundamental(1.0, pt(&[0.0, 0.0, 0.0]), FundamentalSign::Minus).unwrap();
        assert!(matches!(
            f.evaluate(&pt(&[0.0, 0.0, 0.0])),
            Err(Error::Singularity(_))
        ));
        assert!(matches!(
            f.evaluate(&pt(&[1.0, 0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(f.min_singular_distance(&pt(&[0.5, 0.0, 0.0])) == 0.5);
        // Fields without singularities report infinite clearance.
        let g = make_control(3, ControlKind::Constant(1.0)).unwrap();
        assert_eq!(g.min_singular_distance(&pt(&[0.0, 0.0, 0.0])), f64::INFINITY);
    }

    #[test]
    fn constructor_validation() {
        assert!(make_u_radial(3, 0.0, pt(&[0.0, 0.0, 0.0])).is_err());
        assert!(make_u_radial(3, f64::NAN, pt(&[0.0, 0.0, 0.0])).is_err());
        assert!(make_u_radial(3, 1.0, pt(&[0.0, 0.0])).is_err());
        assert!(matches!(
            make_fundamental(1.0, pt(&[0.0, 0.0]), FundamentalSign::Plus),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            make_harmonic_fundamental(2, pt(&[0.0, 0.0])),
            Err(Error::Unsupported(_))
        ));
        assert!(make_plane_wave(3, 1.0, vec![0.0, 0.0, 0.0]).is_err());
        assert!(make_control(3, ControlKind::Coordinate(3)).is_err());
    }

    #[test]
    fn plane_wave_normalizes_direction() {
        let f = make_plane_wave(2, 2.0, vec![3.0, 4.0]).unwrap();
        let v = f.evaluate(&pt(&[1.0, 1.0])).unwrap();
        // Unit direction (0.6, 0.8); exponent 2 * 1.4.
        assert!((v - (2.0f64 * 1.4).exp()).abs() < 1e-12);
    }

    #[test]
    fn catalog_has_expected_composition() {
        let fields = catalog(3, 1.0).unwrap();
        assert_eq!(fields.len(), 9);
        assert_eq!(
            fields
                .iter()
                .filter(|f| f.class() == FieldClass::Panharmonic)
                .count(),
            4
        );
        assert_eq!(
            fields
                .iter()
                .filter(|f| f.class() == FieldClass::Neither)
                .count(),
            1
        );
        // In 2d the fundamental solutions drop out.
        let fields = catalog(2, 1.0).unwrap();
        assert_eq!(fields.len(), 6);
    }

    #[test]
    fn field_parsing() {
        let f = parse_field("u_radial", 3, 1.0).unwrap();
        assert_eq!(f.class(), FieldClass::Panharmonic);
        let f = parse_field("u_radial@1,0,0", 3, 1.0).unwrap();
        let v = f.evaluate(&pt(&[2.0, 0.0, 0.0])).unwrap();
        assert!((v - 1.1752011936438014).abs() < 1e-14);
        let f = parse_field("efund-@3,0,0", 3, 1.0).unwrap();
        assert_eq!(f.singular_points(), &[pt(&[3.0, 0.0, 0.0])]);
        let f = parse_field("const:2.5", 3, 1.0).unwrap();
        assert_eq!(f.evaluate(&pt(&[9.0, 9.0, 9.0])).unwrap(), 2.5);
        let f = parse_field("coord:1", 3, 1.0).unwrap();
        assert_eq!(f.evaluate(&pt(&[9.0, 7.0, 5.0])).unwrap(), 7.0);
        let f = parse_field("planewave:2:0,0,1", 3, 1.0).unwrap();
        assert_eq!(f.mu(), Some(2.0));
        let f = parse_field("sqnorm", 3, 1.0).unwrap();
        assert_eq!(f.class(), FieldClass::Neither);

        for bad in [
            "nope",
            "coord:x",
            "coord:7",
            "const:abc",
            "planewave:1",
            "planewave:a:1,0,0",
            "u_radial@1,0",
            "sqnorm@1,0,0",
            "efund+@0,0",
        ] {
            assert!(parse_field(bad, 3, 1.0).is_err(), "{bad} should fail");
        }
        // efund in 2d is unsupported rather than a parse error.
        assert!(matches!(
            parse_field("efund+", 2, 1.0),
            Err(Error::Unsupported(_))
        ));
    }
}
