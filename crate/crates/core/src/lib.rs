//! Geometry of 2x2 real symmetric matrices under the cone metric.
//!
//! The space of symmetric matrices is coordinatized as (x, y, z) and carries
//! the metric that makes unit-eigenvector frames parallel. On top of that
//! structure the crate provides:
//!
//! - coordinate charts, tangent frames, connection form and Christoffel
//!   symbols ([`symspace`], [`metric`]);
//! - closed-form and entry-only eigendecomposition as an independent oracle
//!   ([`eigen`]);
//! - parallel transport of eigenvectors along matrix families, geometric
//!   phases, winding numbers (half-integers across the singular line) and
//!   holonomy groups ([`transport`]);
//! - the branched double covering that trivializes eigenvector sign flips
//!   ([`covering`]);
//! - mass-spring chains whose stiffness parameters pull the metric back to
//!   parameter space ([`mass_spring`]);
//! - a finite-difference cross-validation suite for the connection and
//!   curvature ([`verify`]) and a transport-vs-eigendecomposition benchmark
//!   ([`mod@bench`]).

pub mod bench;
pub mod covering;
pub mod curve;
pub mod eigen;
pub mod error;
pub mod mass_spring;
pub mod metric;
pub mod symspace;
pub mod transport;
pub mod verify;

pub use curve::{CurveSpec, MatrixCurve};
pub use error::{GeomError, Result};
pub use symspace::{SymPoint, TangentVec};
