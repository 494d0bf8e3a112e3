//! Hexagonal circle packings modulo Möbius transformations.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! * [`moebius`]: points of the Riemann sphere, cross-ratios, Möbius maps and
//!   oriented circles in Hermitian form.
//! * [`flower`]: single hexagonal flowers, their one-parameter family, the
//!   conformally symmetric member, s-circles and edge cross-ratios.
//! * [`lattice`]: cross-ratio fields on the honeycomb lattice, the closed-form
//!   tangent solution and its continuation.
//! * [`layout`]: packings reconstructed from fields, Doyle spirals and
//!   immersion checks.
//! * [`airy`]: Schwarzian derivatives, Airy functions and the discrete
//!   Schwarzian of near-regular fields.
#![no_std]
// Negated comparisons are used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

// Modules import `num_traits::Float` for the libm-backed float methods. When
// std is anywhere in the build its inherent methods win and the import goes
// unused, hence the `allow` on each of those imports.

pub mod airy;
pub mod error;
pub mod flower;
pub mod lattice;
pub mod layout;
pub mod moebius;
pub mod tolerance;

pub use error::{HexError, Result};
pub use moebius::{ExtComplex, MoebiusMap, OrientedCircle};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
