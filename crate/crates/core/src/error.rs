use alloc::vec::Vec;

use crate::lattice::{HexEdge, LatticeIndex};

pub type Result<T> = core::result::Result<T, HexError>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HexError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("not a flower configuration: |m + 1| = {residual:e}")]
    NotAFlowerConfiguration { residual: f64 },
    #[error("touching points are not cyclically ordered on a common circle")]
    NotCyclicallyOrdered,
    #[error("non-positive radius {0}")]
    NonPositiveRadius(f64),
    #[error("the map is the identity")]
    IdentityMap,
    #[error("fixed points coincide within tolerance")]
    NumericallyParabolic,
    #[error("alternative cross-ratio forms disagree by {0:e}")]
    InconsistentCrossRatios(f64),
    #[error("target cross-ratios i*{0}, i*{1} are not realized by an immersed symmetric flower")]
    TargetNotRealizable(f64, f64),
    #[error("iteration did not converge, residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("tangent solution has a pole on {} edge(s) of the window", edges.len())]
    PoleOnWindow { edges: Vec<HexEdge> },
    #[error("missing value on edge {0:?}")]
    MissingEdge(HexEdge),
    #[error("singular pair: 1 + ab = 0")]
    SingularPair,
    #[error("monodromy violation, residual {residual:e}")]
    MonodromyViolation { residual: f64 },
    #[error("opposite edges of hexagon {0:?} carry different values")]
    AsymmetricHexagon(LatticeIndex),
    #[error("field is inconsistent, cycle residual {residual:e}")]
    FieldInconsistent { residual: f64 },
    #[error("edge {0:?} is not positive imaginary")]
    NotImmersed(HexEdge),
    #[error("tangency chaining failed to close, residual {residual:e}")]
    ClosureFailure { residual: f64 },
    #[error("derivative vanishes (critical point)")]
    CriticalPoint,
    #[error("argument outside the validated domain")]
    OutOfValidatedDomain,
    #[error("A = 0: constant Schwarzian, use the exponential branch")]
    ConstantCase,
    #[error("edge {0:?} is too far from the regular value i*sqrt(3)")]
    FarFromRegular(HexEdge),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
