//! Exact enumeration of lattice triangles up to similarity, closed-form
//! measures on the moduli space of triangles, lattice approximants of
//! arbitrary triangle shapes, and the Monte Carlo experiments that compare
//! the two.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: integer points, triangles, squared sides and similarity keys.
//! - [`moduli`]: normalized side-length triples, the `S3` action, regions and
//!   their measures, weighted shape sets.
//! - [`enumeration`]: similarity-class census of all triangles in `[-n, n]^2`.
//! - [`diophantine`]: pigeonhole Dirichlet approximation and shape approximants.
//! - [`randgeom`]: seeded Monte Carlo estimators over the unit square.
//! - [`analysis`]: obtuse-fraction curves and equidistribution diagnostics.
//! - [`export`] and [`svg`]: CSV/JSON serialization and SVG plots used by the CLI.

pub mod analysis;
pub mod cli;
pub mod diophantine;
pub mod enumeration;
mod error;
pub mod export;
pub mod lattice;
pub mod moduli;
pub mod parallel;
pub mod randgeom;
pub mod svg;

pub use error::{Error, Result};
pub use lattice::{AngleClass, LatticePoint, LatticeTriangle, SimilarityKey, SquaredSides};
pub use moduli::{LabeledTriple, ModuliRegion, PlanePoint, ShapeTriple, WeightedShapeSet};

/// Probability that three uniform points in the unit square span an obtuse
/// triangle: `97/150 + pi/40`.
pub const LANGFORD_OBTUSE_PROBABILITY: f64 = 97.0 / 150.0 + std::f64::consts::PI / 40.0;

/// Reference value for the mean distance between two uniform points in the
/// unit square.
pub const MEAN_PAIR_DISTANCE_REFERENCE: f64 = 0.5214;
