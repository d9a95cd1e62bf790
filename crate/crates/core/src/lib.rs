//! Bell inequalities from group orbits.
//!
//! A finite permutation group `G` with a real orthogonal representation `D`
//! and a cyclic subgroup `H` of order `m = dim D` generates, from a suitable
//! seed vector, an orbit made of `k = |G|/m` orthonormal bases. Each basis is
//! a measurement; product orbits pair Alice's and Bob's measurements. This
//! crate computes, for sets of such product orbits:
//!
//! * the exact classical bound over deterministic hidden-variable strategies,
//!   with a Hall-matching certificate for single orbits;
//! * the quantum bound as the top eigenvalue of the Bell operator, cross-checked
//!   against the closed-form per-irrep eigenvalues when `D ⊗ D` is multiplicity-free.
//!
//! Floating-point code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`, which is what the CLI and reports use.

pub mod bounds;
pub mod error;
pub mod linalg;
pub mod orbit;
pub mod perm_group;
pub mod representation;
pub mod scalar;
pub mod scenario;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Matrix64 = linalg::Matrix<f64>;
pub type Representation64 = representation::Representation<f64>;
pub type SeedVector64 = orbit::SeedVector<f64>;
pub type LabeledOrbit64 = orbit::LabeledOrbit<f64>;
pub type ProductOrbit64 = orbit::ProductOrbit<f64>;
pub type BellOperator64 = bounds::BellOperator<f64>;
pub type BoundsReport64 = bounds::BoundsReport<f64>;
