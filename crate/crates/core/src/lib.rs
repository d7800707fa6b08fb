//! Points of cyclic quiver varieties and the maps acting on them.
//!
//! The quiver `Q_m` is the oriented cycle on vertices `0..m` framed by one
//! extra vertex `∞`. This crate covers
//!
//! - the root lattice and Weyl group bookkeeping ([`lattice`]),
//! - matrix points of the deformed moment map fibre ([`point`], [`solver`]),
//! - the triangular automorphism group ([`group`], [`free_algebra`]),
//! - reflection functors ([`reflection`]),
//! - trace invariants ([`invariants`]),
//! - a symbolic normalizer for closed paths ([`rewrite`]),
//! - the file formats ([`io`]).
//!
//! Numerical code is generic over [`scalar::Real`]; the aliases below fix
//! double precision.

pub mod checks;
pub mod error;
pub mod free_algebra;
pub mod group;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod point;
pub mod reflection;
pub mod rewrite;
pub mod scalar;
pub mod solver;

pub use error::{QuiverError, Result};
pub use lattice::{DimVector, ParamVector, RootClass, RootTag, Vertex, WeylWord};

use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type Setting = point::QuiverSetting<f64>;
pub type Point = point::QuiverPoint<f64>;
pub type BlockPoint = point::BlockPoint<f64>;
pub type Generator = group::GeneratorG<C64>;
pub type Word = group::GroupWord<C64>;
pub type InvariantVector = invariants::InvariantVector<f64>;
pub type Scaffold = reflection::ReflectionScaffold<f64>;
pub type SettingF32 = point::QuiverSetting<f32>;
pub type PointF32 = point::QuiverPoint<f32>;
