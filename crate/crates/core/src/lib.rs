//! Reuleaux polyhedra `B(X)` and Meissner polyhedra built from extremal
//! point sets in ℝ³.
//!
//! The crate validates an extremal configuration, recovers the edges and
//! dual edge pairs of `B(X)`, evaluates closed-form volumes and surface
//! areas, and checks them against two independent oracles: seeded Monte
//! Carlo membership sampling ([`oracle`]) and divergence-theorem sums over
//! generated boundary meshes ([`mesh`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod formulas;
pub mod geom;
pub mod mesh;
pub mod oracle;
pub mod polyhedron;

pub use error::{Error, Result};
pub use formulas::AnglePair;
pub use geom::{Point3, Tolerances};
pub use oracle::BodyKind;
pub use polyhedron::{PointConfig, ReuleauxStructure};
