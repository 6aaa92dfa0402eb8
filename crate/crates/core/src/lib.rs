//! Convex hulls of modular hyperbolas `xy = a (mod m)` with exact integer
//! arithmetic, together with the number theory, lattice geometry and conic
//! tools used to study their vertex counts.

pub mod conics;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod hullfast;
pub mod hyperbola;
pub mod ntheory;
pub mod point;

pub use error::{Error, Result};
pub use geometry::{convex_hull, twice_area, ConvexPolygon, HullShape, UnimodularMap};
pub use hullfast::{fast_hull, naive_hull, HullMethod, HullResult, PruneConfig, VerificationReport};
pub use hyperbola::{HyperbolaSpec, SymmetryKind};
pub use ntheory::{ArithmeticProfile, Factorization, MAX_MODULUS};
pub use point::{LatticePoint, PointSet};
