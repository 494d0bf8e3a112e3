//! Numeric tolerances.
//!
//! The geometric default can be changed at runtime with
//! [`set_default_tolerance`]; the remaining levels are fixed.

#[cfg(target_has_atomic = "64")]
use core::sync::atomic::{AtomicU64, Ordering};
#[cfg(not(target_has_atomic = "64"))]
use core::sync::atomic::{AtomicU32, Ordering};

pub const GEOMETRIC: f64 = 1e-9;
/// Equivalence checks that go through two Möbius round trips.
pub const SPREAD: f64 = 1e-8;
/// Cycle closure of frame propagation and layout validation.
pub const CLOSURE: f64 = 1e-8;
/// Comparisons between layouts produced by different modules.
pub const CROSS_MODULE: f64 = 1e-7;
/// Values that are exact up to rounding.
pub const CONSTRUCTION: f64 = 1e-12;
/// An edge sits on a pole of the tangent solution when `|cos| < POLE`.
pub const POLE: f64 = 1e-8;
/// Chordal distance below which two points count as coincident.
pub const COINCIDENCE: f64 = 1e-12;

#[cfg(target_has_atomic = "64")]
static DEFAULT_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

// Without 64-bit atomics the override is kept as an `f32`; zero means "not set".
#[cfg(not(target_has_atomic = "64"))]
static DEFAULT_BITS: AtomicU32 = AtomicU32::new(0);

/// Current default geometric tolerance.
pub fn default_tolerance() -> f64 {
    #[cfg(target_has_atomic = "64")]
    return f64::from_bits(DEFAULT_BITS.load(Ordering::Relaxed));
    #[cfg(not(target_has_atomic = "64"))]
    match DEFAULT_BITS.load(Ordering::Relaxed) {
        0 => GEOMETRIC,
        bits => f64::from(f32::from_bits(bits)),
    }
}

/// Override the default geometric tolerance for the whole process.
///
/// Non-finite or non-positive values are ignored.
pub fn set_default_tolerance(tol: f64) {
    if tol.is_finite() && tol > 0.0 {
        #[cfg(target_has_atomic = "64")]
        DEFAULT_BITS.store(tol.to_bits(), Ordering::Relaxed);
        #[cfg(not(target_has_atomic = "64"))]
        DEFAULT_BITS.store((tol as f32).to_bits().max(1), Ordering::Relaxed);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bits_encode_geometric() {
        assert_eq!(f64::from_bits(0x3E11_2E0B_E826_D695), GEOMETRIC);
    }
}
