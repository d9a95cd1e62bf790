//! Scalar abstraction for the floating-point parts of the toolkit.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar used by matrices, representations, orbits and Bell operators.
///
/// Tolerances are tied to the scalar so that `f32` runs use checks it can
/// actually meet.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Tolerance for matrix identities (homomorphism, orthogonality, Gram, commutators).
    fn identity_tolerance() -> Self;
    /// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
    fn eigen_tolerance() -> Self;
    /// Minimum separation of orbit images before they count as the same vector.
    fn orbit_separation() -> Self;
    /// Margin a quantum bound must exceed the classical bound by to count as a violation.
    fn violation_threshold() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits the scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn identity_tolerance() -> Self {
        1e-9
    }
    fn eigen_tolerance() -> Self {
        1e-12
    }
    fn orbit_separation() -> Self {
        1e-6
    }
    fn violation_threshold() -> Self {
        1e-7
    }
}

impl Real for f32 {
    fn identity_tolerance() -> Self {
        1e-4
    }
    fn eigen_tolerance() -> Self {
        1e-5
    }
    fn orbit_separation() -> Self {
        1e-3
    }
    fn violation_threshold() -> Self {
        1e-3
    }
}
