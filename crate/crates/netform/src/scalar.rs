//! Scalar abstraction: every numeric routine in this crate is generic over a
//! floating-point type implementing [`Real`].
//!
//! `f64` is the production type (the crate-root aliases use it); `f32` is
//! supported for quick low-precision experiments. Tolerances that are quoted
//! for `f64` (unit-sum 1e-12, drift 1e-9, audit 1e-9) widen automatically for
//! narrower types via the epsilon-scaled defaults below.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lift an `f64` constant into `Self`.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant must be representable")
    }

    /// Round-trip to `f64` (exact for `f32`/`f64`).
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    /// Tolerance for "these masses/probabilities sum to one" checks.
    fn unit_sum_tol() -> Self {
        Self::of(1e-12).max(Self::epsilon() * Self::of(100.0))
    }

    /// Per-step renormalization drift allowed by the ODE integrator.
    fn drift_tol() -> Self {
        Self::of(1e-9).max(Self::epsilon() * Self::of(10_000.0))
    }

    /// Relative tolerance for the periodic exact-recomputation audit of
    /// incrementally maintained simulation totals.
    fn audit_tol() -> Self {
        Self::of(1e-9).max(Self::epsilon() * Self::of(4_096.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_tolerances_match_contract() {
        assert_eq!(f64::unit_sum_tol(), 1e-12);
        assert_eq!(f64::drift_tol(), 1e-9);
        assert_eq!(f64::audit_tol(), 1e-9);
    }

    #[test]
    fn f32_tolerances_scale_with_epsilon() {
        assert!(f32::unit_sum_tol() > 1e-12);
        assert!(f32::unit_sum_tol() < 1e-4);
    }
}
