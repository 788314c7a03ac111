//! Rational circle points near a prescribed angle, via the tan-half-angle
//! substitution s = 2r/(1+r^2), c = (1-r^2)/(1+r^2).

use crate::angle::{Angle, ExactAngle};
use crate::interval::Interval;
use crate::trig;
use crate::unit::UnitPoint;
use crate::{rat, rat_int, Int, Rat};
use num_traits::{One, Signed, Zero};

/// Returns a unit point whose argument is within `eps` of `theta`.
///
/// The output size is polynomial in the input size: the tan-half-angle
/// parameter is a dyadic rational with about log2(1/eps) bits.
pub fn rational_circle_point(theta: &Angle, eps: &Rat) -> UnitPoint {
    assert!(eps.is_positive() && eps < &Rat::one(), "eps must be in (0,1)");
    // exact quarter-turn multiples have exact tangent half-angles
    if let Some(ExactAngle::PiMultiple(q)) = &theta.exact {
        let m = q - Rat::from_integer((q / rat_int(2)).floor().to_integer() * Int::from(2));
        // m in [0, 2): quarter multiples
        if m.is_zero() {
            return UnitPoint::one();
        } else if m == rat(1, 2) {
            return UnitPoint::i();
        } else if m == rat_int(1) {
            return UnitPoint::minus_one();
        } else if m == rat(3, 2) {
            return UnitPoint::minus_i();
        }
    }
    if let Some(ExactAngle::Radians(q)) = &theta.exact {
        if q.is_zero() {
            return UnitPoint::one();
        }
    }
    // prec such that interval widths stay well under eps
    let bits = bits_of(eps) + 12;
    let theta = theta.refine(bits + 16);
    let iv = &theta.enclosure;
    // tan(theta/2): near odd multiples of pi this blows up; handle by the
    // complementary form on the cosine sign.
    let (s, c) = trig::sin_cos(iv, bits + 8);
    let one = Interval::point(Rat::one());
    let denom = one.add(&c);
    let t_iv = if denom.lo > rat(1, 4) {
        s.div(&denom).expect("denominator bounded away from zero")
    } else {
        // theta near pi (mod 2pi): tan(theta/2) = (1-cos)/sin; if sin's sign
        // is uncertain the point is indistinguishable from -1 at this eps.
        match s.sign() {
            None => return UnitPoint::minus_one(),
            Some(_) => one.sub(&c).div(&s).expect("sin bounded away from zero"),
        }
    };
    // |arg(from_tan_half(r)) - theta| <= 2 |r - tan(theta/2)| (atan is 1-Lipschitz)
    let r = round_rat(&t_iv.mid(), bits);
    UnitPoint::from_tan_half(&r)
}

/// Dyadic rounding of q to `bits` fractional bits, keeping the size small.
fn round_rat(q: &Rat, bits: u32) -> Rat {
    let scaled = q * Rat::from_integer(Int::one() << bits);
    Rat::new(scaled.round().to_integer(), Int::one() << bits)
}

fn bits_of(eps: &Rat) -> u32 {
    // smallest b with 2^-b <= eps/4
    let inv = (eps / rat_int(4)).recip();
    inv.ceil().to_integer().bits() as u32 + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::rat_to_f64;

    fn check(theta: Angle, eps: Rat) {
        let p = rational_circle_point(&theta, &eps);
        let arg = p.arg(160);
        let t = theta.refine(160);
        // compare circularly
        let d = arg.sub(&t.enclosure);
        let tau = trig::two_pi(160);
        let dist_ok = d.abs().lo <= eps
            || d.abs().sub(&tau).abs().lo <= eps;
        assert!(dist_ok, "angle error too large for theta={}", t.to_f64());
    }

    #[test]
    fn exact_axis_points() {
        assert_eq!(rational_circle_point(&Angle::zero(), &rat(1, 2)), UnitPoint::one());
        assert_eq!(
            rational_circle_point(&Angle::from_pi_multiple(rat(1, 2)), &rat(1, 1000)),
            UnitPoint::i()
        );
        assert_eq!(
            rational_circle_point(&Angle::from_pi_multiple(rat_int(1)), &rat(1, 1000)),
            UnitPoint::minus_one()
        );
    }

    #[test]
    fn pythagorean_structure() {
        // r = 1/2 gives (3/5, 4/5)
        let p = UnitPoint::from_tan_half(&rat(1, 2));
        assert_eq!(p.re(), &rat(3, 5));
        assert_eq!(p.im(), &rat(4, 5));
    }

    #[test]
    fn random_angles_meet_tolerance() {
        for k in 0..40i64 {
            let theta = Angle::from_radians(rat(7 * k - 113, 37));
            check(theta, rat(1, 1 << 20));
        }
        // tight tolerance
        check(Angle::from_radians(rat(355, 113)), rat(1, 1_000_000_000));
    }

    #[test]
    fn output_size_is_polynomial() {
        let theta = Angle::from_radians(rat(1, 3));
        let p = rational_circle_point(&theta, &rat(1, 1 << 30));
        let sz = p.re().denom().bits();
        assert!(sz < 120, "denominator unexpectedly large: {sz} bits");
        let _ = rat_to_f64(p.re());
    }
}
