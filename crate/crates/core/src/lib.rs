//! Tropical Jacobians of tropical curves metrized by fine saturated sharp
//! monoids.
//!
//! The crate is layered bottom-up:
//!
//! * [`zlinalg`]: exact integer matrices, lattices and abelian groups;
//! * [`fsmonoid`]: sharp fs monoids as rational cones, their faces and quotients;
//! * [`tropcurve`]: monoid-metrized graphs, contraction, subdivision, cycles;
//! * [`jacobian`]: monodromy pairing, bounded monodromy, the tropical Jacobian,
//!   alignment and generization maps;
//! * [`strata`]: the face-indexed family over a monoid chart and the
//!   classification of subgroup systems;
//! * [`cli`]: the `tropjac` command-line front end and JSON formats.

pub mod cli;
pub mod error;
pub mod fsmonoid;
pub mod jacobian;
pub mod strata;
pub mod tropcurve;
pub mod zlinalg;

pub use error::{Error, Result};
pub use fsmonoid::{Face, FsMonoid, MonoidHom};
pub use jacobian::{AlignmentReport, MonodromyPairing, TropicalJacobian};
pub use strata::{FamilyReport, ModelClassification, StratifiedFamily};
pub use tropcurve::{CurveMap, CycleBasis, EdgeSpec, TropCurve};
pub use zlinalg::{FgAbGroup, IntMatrix, Sublattice, ZVec};
