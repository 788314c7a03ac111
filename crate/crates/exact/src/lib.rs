//! Exact arithmetic over the Gaussian rationals and the rational unit circle,
//! plus the error-bounded angle machinery everything downstream builds on.
//!
//! Point data (complex numbers, unit-circle points, arc membership) is exact:
//! no rounding ever happens there. Angles and arc lengths are transcendental,
//! so they are carried as certified enclosures ([`Interval`]) together with an
//! exact description when one exists (multiples of pi).

pub mod angle;
pub mod arc;
pub mod cinterval;
pub mod circle;
pub mod contfrac;
pub mod gaussian;
pub mod interval;
pub mod parse;
pub mod trig;
pub mod unit;

pub use angle::Angle;
pub use arc::CircularArc;
pub use cinterval::CInterval;
pub use circle::rational_circle_point;
pub use contfrac::continued_fraction_round;
pub use gaussian::GaussianRational;
pub use interval::Interval;
pub use unit::UnitPoint;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Shorthand for integer rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("point is not on the unit circle: |z|^2 = {0}")]
    NotOnCircle(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
