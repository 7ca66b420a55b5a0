//! Spacelike stationary graphs in Minkowski space `R_1^{2+m}`, built from
//! holomorphic data and checked numerically.
//!
//! The crate synthesizes entire stationary spacelike graphs
//! `f: R^2 -> R_1^m` from canonical isotropic curves
//! `alpha = (1/2, c/2, d_3/2, ..., mu cosh beta, mu sinh beta)`, evaluates
//! the induced metric and its area element W, verifies the divergence-form
//! stationarity system by finite differences, computes the Lewy
//! transformation and its isothermal parameters, and in codimension two
//! evaluates Gauss and normal curvature together with total-curvature
//! integrals over expanding squares.
//!
//! See the `examples/` directory for runnable tours of each capability; the
//! `minkgraph` binary exposes the same operations as CLI subcommands.

pub mod curvature;
pub mod error;
pub mod expr;
pub mod graph;
pub mod lab;
pub mod lewy;
pub mod mink;
pub mod quad;
pub mod rep;

pub use error::{Error, Result};
pub use expr::Expr;
pub use graph::{GraphSurface, MetricSample, ScalarField2};
pub use mink::{mink_inner, CausalClass, MinkVector};
pub use rep::{make_canonical, Classification, StationaryData};
