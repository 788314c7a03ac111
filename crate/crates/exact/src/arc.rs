//! Counterclockwise circular arcs with exact membership predicates and
//! error-bounded lengths.

use crate::angle::Angle;
use crate::interval::Interval;
use crate::unit::UnitPoint;
use crate::{rat_int, Rat};
use crate::trig;
use num_traits::Zero;
use serde::Serialize;

/// An arc traversed counterclockwise from `start` to `end`. `start == end`
/// with both ends closed is the single point; open, the empty arc of length
/// zero. The full circle carries its own flag.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircularArc {
    pub start: UnitPoint,
    pub end: UnitPoint,
    pub closed_start: bool,
    pub closed_end: bool,
    pub full: bool,
}

impl CircularArc {
    pub fn full_circle() -> Self {
        CircularArc {
            start: UnitPoint::one(),
            end: UnitPoint::one(),
            closed_start: true,
            closed_end: true,
            full: true,
        }
    }

    pub fn closed(start: UnitPoint, end: UnitPoint) -> Self {
        CircularArc { start, end, closed_start: true, closed_end: true, full: false }
    }

    pub fn open(start: UnitPoint, end: UnitPoint) -> Self {
        CircularArc { start, end, closed_start: false, closed_end: false, full: false }
    }

    pub fn is_degenerate_point(&self) -> bool {
        !self.full && self.start == self.end
    }

    /// Exact membership respecting orientation and endpoint flags.
    pub fn contains(&self, z: &UnitPoint) -> bool {
        if self.full {
            return true;
        }
        if self.start == self.end {
            return self.closed_start && self.closed_end && z == &self.start;
        }
        if z == &self.start {
            return self.closed_start;
        }
        if z == &self.end {
            return self.closed_end;
        }
        UnitPoint::strictly_between_ccw(&self.start, z, &self.end)
    }

    /// Certified enclosure of the arc length in [0, 2pi].
    pub fn length_enclosure(&self, prec: u32) -> Interval {
        if self.full {
            return trig::two_pi(prec);
        }
        if self.start == self.end {
            return Interval::zero();
        }
        let a = self.start.arg(prec + 8);
        let b = self.end.arg(prec + 8);
        let diff = b.sub(&a);
        // normalize into (0, 2pi): the points differ so the true value is nonzero
        if let Some(sign) = diff.sign() {
            if sign == std::cmp::Ordering::Greater {
                return diff;
            }
            return diff.add(&trig::two_pi(prec + 8));
        }
        // Enclosure straddles zero; decide the sign of the true difference
        // exactly: end is ahead of start within the first half turn iff
        // cross(start, end) > 0.
        let cross = self.start.re() * self.end.im() - self.start.im() * self.end.re();
        if cross.is_zero() {
            // antipodal: length is exactly pi
            return trig::pi(prec);
        }
        if cross > Rat::zero() {
            // true difference is in (0, pi): clamp enclosure from below by 0
            let lo = if diff.lo < Rat::zero() { Rat::zero() } else { diff.lo };
            Interval::new(lo, diff.hi)
        } else {
            let shifted = diff.add(&trig::two_pi(prec + 8));
            let hi2 = trig::two_pi(prec + 8).hi;
            let hi = if shifted.hi > hi2 { hi2 } else { shifted.hi };
            Interval::new(shifted.lo, hi)
        }
    }

    /// Arc length as an [`Angle`]; exact pi-multiples are recognized for the
    /// axis points so that e.g. Arc[i, 1] has length exactly 3pi/2.
    pub fn length(&self, prec: u32) -> Angle {
        if self.full {
            return Angle::from_pi_multiple(rat_int(2));
        }
        if self.start == self.end {
            return Angle::zero();
        }
        if let (Some(a), Some(b)) = (axis_angle(&self.start), axis_angle(&self.end)) {
            let mut d = b - a;
            if d <= Rat::zero() {
                d += rat_int(2);
            }
            return Angle::from_pi_multiple(d);
        }
        Angle::from_interval(self.length_enclosure(prec))
    }
}

/// Exact argument as a multiple of pi for the four axis points.
fn axis_angle(p: &UnitPoint) -> Option<Rat> {
    if p.is_one() {
        Some(Rat::zero())
    } else if p == &UnitPoint::i() {
        Some(crate::rat(1, 2))
    } else if p.is_minus_one() {
        Some(rat_int(1))
    } else if p == &UnitPoint::minus_i() {
        Some(crate::rat(3, 2))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::ExactAngle;
    use crate::rat;

    #[test]
    fn full_circle_contains_everything() {
        let arc = CircularArc::full_circle();
        assert!(arc.contains(&UnitPoint::from_tan_half(&rat(5, 3))));
        let len = arc.length(128);
        assert_eq!(len.exact, Some(ExactAngle::PiMultiple(rat_int(2))));
    }

    #[test]
    fn orientation_convention() {
        // Arc[1, i] closed: contains 1, not -i
        let arc = CircularArc::closed(UnitPoint::one(), UnitPoint::i());
        assert!(arc.contains(&UnitPoint::one()));
        assert!(arc.contains(&UnitPoint::i()));
        assert!(!arc.contains(&UnitPoint::minus_i()));
        // an interior point
        let p = UnitPoint::from_tan_half(&rat(1, 3));
        assert!(arc.contains(&p));
    }

    #[test]
    fn quarter_turn_lengths() {
        let arc = CircularArc::closed(UnitPoint::i(), UnitPoint::one());
        let len = arc.length(128);
        assert_eq!(len.exact, Some(ExactAngle::PiMultiple(rat(3, 2))));
    }

    #[test]
    fn degenerate_arcs() {
        let p = UnitPoint::from_tan_half(&rat(2, 7));
        let open = CircularArc::open(p.clone(), p.clone());
        assert!(!open.contains(&p));
        assert_eq!(open.length(64).to_f64(), 0.0);
        let closed = CircularArc::closed(p.clone(), p.clone());
        assert!(closed.contains(&p));
    }

    #[test]
    fn complement_lengths_sum_to_tau() {
        let a = UnitPoint::from_tan_half(&rat(1, 5));
        let b = UnitPoint::from_tan_half(&rat(-7, 2));
        let l1 = CircularArc::closed(a.clone(), b.clone()).length_enclosure(128);
        let l2 = CircularArc::closed(b, a).length_enclosure(128);
        let total = l1.add(&l2);
        assert!(total.intersects(&trig::two_pi(128)));
        assert!(total.width() < Rat::new(crate::Int::from(1), crate::Int::from(1u128 << 100)));
    }
}
