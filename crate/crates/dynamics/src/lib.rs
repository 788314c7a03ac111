//! The circle dynamics of the ferromagnetic Ising tree recursion: the maps
//! z -> lambda ((z+b)/(bz+1))^k on the unit circle, their fixed-point and
//! threshold structure, orbit machinery, expanding-point search, the
//! contracting-cover engine, and the near-arithmetic-progression construction.

pub mod arc_cover;
pub mod covering;
pub mod expanding;
pub mod fixed_points;
pub mod map;
pub mod mobius;
pub mod nearap;
pub mod threshold;

pub use arc_cover::{verify_arc_covering, CoveringCase, CoveringCertificate};
pub use covering::{cover_and_contract, LinearMap};
pub use expanding::find_expanding_point;
pub use fixed_points::{attracting_fixed_point, fixed_points_on_circle, FixedPoint, Stability};
pub use map::{derivative_magnitude, MapParams, OrbitMode, OrbitPoint};
pub use mobius::{is_rational_rotation, mobius_classify, MobiusClass};
pub use nearap::{near_ap_triple, BinaryWord};
pub use threshold::{in_chaotic_regime, lambda_threshold, ThresholdResult};

#[derive(Debug, thiserror::Error)]
pub enum DynamicsError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("indeterminate at working precision: {0}")]
    Indeterminate(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("covering precondition failed: {0}")]
    CoverViolated(String),
    #[error("lemma hypothesis failed: {0}")]
    HypothesisFailed(String),
}
