//! Mean value calculus for the modified Helmholtz equation `∇²u = μ²u`.
//!
//! Solutions of that equation are called *panharmonic* here. They satisfy a
//! mean value property analogous to the harmonic one, except that sphere and
//! ball averages pick up radius-dependent Bessel factors:
//!
//! ```text
//! sphere mean:  M°(u, x, r) = a°(μr) · u(x)
//! ball mean:    M•(u, x, r) = a•(μr) · u(x)
//! ```
//!
//! where `a°` and `a•` are normalized modified Bessel functions of the first
//! kind (see [`specfun`]). Everything in this crate builds on those two
//! identities: verifying them numerically, inverting them to detect
//! panharmonicity and recover μ, reweighting walk-on-spheres jumps by `1/a°`,
//! and testing the converse "only balls have this property" characterization.
//!
//! # Examples first
//!
//! The primary interface of this crate is its `examples/` directory; each
//! example is a self-contained tour of one capability. Run them with
//! `cargo run --release -p panharmonia --example <name>`:
//!
//! | Example | What it shows |
//! |---|---|
//! | `bessel_and_coefficients` | Half-integer Bessel values, mean-value coefficients, asymptotics, the Poisson-integral cross-check |
//! | `domains_and_sampling` | Domain geometry: distances, projections, volumes, matched radii, reproducible sampling |
//! | `mean_values` | Sphere, ball, iterated, and domain means against closed forms |
//! | `identity_suite` | The full mean-value identity suite over the field catalog |
//! | `maximum_principle` | Weak maximum principle and subharmonicity of |u| |
//! | `detect_panharmonicity` | Classifying fields, recovering μ, rejecting wrong hypotheses |
//! | `walk_on_spheres` | Dirichlet problems via Bessel-weighted walk-on-spheres |
//! | `potato_kugel` | The ball characterization: volume-mean discrepancy and exterior probes |
//! | `riesz_decomposition` | Splitting a panharmonic function into potential plus harmonic majorant |
//!
//! A thin CLI binary (`panharmonia`) exposes the same operations as
//! subcommands (`bessel`, `coeff`, `mean`, `verify`, `detect`, `wos`,
//! `kugel`); see [`cli`].
//!
//! # Module map
//!
//! - [`specfun`]: modified Bessel functions at half-integer order and the
//!   mean-value coefficients `a°`, `a•` and their ratio.
//! - [`geometry`]: points, domains (ball, box, shell, ellipsoid), exact
//!   boundary distances and projections, reproducible RNG streams.
//! - [`fields`]: a catalog of exactly evaluable scalar fields with truthful
//!   classification metadata.
//! - [`means`]: deterministic and Monte Carlo estimators for sphere, ball,
//!   iterated, and domain means, plus boundary flux.
//! - [`verify`]: identity checks with machine-readable reports, asymptotic
//!   limits, the maximum principle, the Riesz decomposition, and the
//!   ball-characterization experiments.
//! - [`detector`]: certifies or refutes μ-panharmonicity from mean ratios.
//! - [`wos`]: the Bessel-weighted walk-on-spheres Dirichlet solver.
//! - [`cli`]: argument parsing, run manifests, report serialization.

pub mod cli;
pub mod detector;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod means;
mod numerics;
pub mod specfun;
pub mod verify;
pub mod wos;

pub use cli::RunManifest;
pub use detector::{ClassifyConfig, Verdict};
pub use error::{Error, Result};
pub use fields::{FieldClass, ScalarField};
pub use geometry::{Domain, Point, RngStream};
pub use means::{MeanEstimate, MeanMethod, QuadratureConfig};
pub use specfun::{CoeffKind, HalfOrder};
pub use verify::{AsymptoticKind, CheckCase, CheckReport, IdentityKind};
pub use wos::{WosConfig, WosSolution, WosVariant};
