//! Global snap tolerance used for scale membership and point equality.
//!
//! All point comparisons against a time scale go through these helpers so
//! that membership stays decidable under floating-point rounding.

/// Relative snap tolerance, floored at the same value in absolute terms.
pub const ETA: f64 = 1e-12;

/// Tolerance for comparisons involving a value of magnitude `x`.
#[inline]
pub fn tol(x: f64) -> f64 {
    ETA * x.abs().max(1.0)
}

/// Snap-equality of two scalars.
#[inline]
pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol(a.abs().max(b.abs()))
}

/// True when `a < b` by more than the snap tolerance.
#[inline]
pub fn strictly_less(a: f64, b: f64) -> bool {
    b - a > tol(a.abs().max(b.abs()))
}
