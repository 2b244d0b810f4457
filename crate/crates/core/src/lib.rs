//! Normalized determinant of point configurations.
//!
//! Given `n` distinct points (Euclidean, inside a hyperbolic ball, or events
//! on world lines in Minkowski space), each ordered pair `(i, j)` defines a
//! direction `u_ij` on the Riemann sphere. The polynomials `p_i` with roots
//! `u_ij` are conjectured to be linearly independent, and the normalized
//! determinant `D` measures how far they are from dependence. This crate
//! builds the direction tables, evaluates `D` in double or double-double
//! precision, checks its known properties and searches for small `|D|`.

// `!(x > 0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod conjecture;
pub mod det;
pub mod error;
pub mod precision;
pub mod search;
pub mod spinor;
pub mod suites;
pub mod transform;
pub mod vec3;

pub use config::{
    Configuration, DirectionTable, EuclideanConfig, Geometry, HyperbolicConfig, MinkowskiConfig, WorldLine,
};
pub use det::{evaluate, DetResult};
pub use error::Error;
pub use precision::Precision;
