//! Points of the rational unit circle S ∩ Q[i].

use crate::gaussian::GaussianRational;
use crate::interval::Interval;
use crate::trig;
use crate::{ExactError, Rat};
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A Gaussian rational with |z| = 1 exactly. Construction is checked, never
/// normalized: a point off the circle is an arithmetic bug upstream and must
/// surface as an error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitPoint(GaussianRational);

impl UnitPoint {
    pub fn new(z: GaussianRational) -> Result<Self, ExactError> {
        let n = z.norm_sqr();
        if n.is_one() {
            Ok(UnitPoint(z))
        } else {
            Err(ExactError::NotOnCircle(n.to_string()))
        }
    }

    pub fn one() -> Self {
        UnitPoint(GaussianRational::one())
    }

    pub fn minus_one() -> Self {
        UnitPoint(GaussianRational::from_int(-1))
    }

    pub fn i() -> Self {
        UnitPoint(GaussianRational::i())
    }

    pub fn minus_i() -> Self {
        UnitPoint(-GaussianRational::i())
    }

    /// The point ((1-r^2)/(1+r^2), 2r/(1+r^2)); on the circle for every
    /// rational r by the Pythagorean identity.
    pub fn from_tan_half(r: &Rat) -> Self {
        let one = Rat::one();
        let r2 = r * r;
        let den = &one + &r2;
        let re = (&one - &r2) / &den;
        let im = (r + r) / &den;
        UnitPoint(GaussianRational::new(re, im))
    }

    pub fn value(&self) -> &GaussianRational {
        &self.0
    }

    pub fn into_value(self) -> GaussianRational {
        self.0
    }

    pub fn re(&self) -> &Rat {
        self.0.re()
    }

    pub fn im(&self) -> &Rat {
        self.0.im()
    }

    pub fn conj(&self) -> Self {
        UnitPoint(self.0.conj())
    }

    pub fn mul(&self, o: &Self) -> Self {
        UnitPoint(&self.0 * &o.0)
    }

    /// Inverse = conjugate for unit-modulus points.
    pub fn inv(&self) -> Self {
        self.conj()
    }

    pub fn pow(&self, e: i64) -> Self {
        UnitPoint(self.0.pow(e).expect("unit point is nonzero"))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.0.is_real() && self.0.re() == &-Rat::one()
    }

    pub fn in_upper_half_plane(&self) -> bool {
        self.0.im().is_positive()
    }

    pub fn in_lower_half_plane(&self) -> bool {
        self.0.im().is_negative()
    }

    /// Argument in [0, 2pi) as a certified enclosure.
    pub fn arg(&self, prec: u32) -> Interval {
        if self.is_one() {
            return Interval::zero();
        }
        trig::atan2_rat(self.im(), self.re(), prec)
    }

    /// Orientation of the ordered triple (a, b, c) of distinct unit points:
    /// Greater when walking a -> b -> c goes counterclockwise (b lies in the
    /// open ccw arc from a to c). Exact.
    pub fn orientation(a: &Self, b: &Self, c: &Self) -> Ordering {
        // sign of the determinant |b-a, c-a| on the circle
        let abx = b.re() - a.re();
        let aby = b.im() - a.im();
        let acx = c.re() - a.re();
        let acy = c.im() - a.im();
        let det = &abx * &acy - &aby * &acx;
        if det.is_positive() {
            Ordering::Greater
        } else if det.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    /// Exact test: is z strictly inside the open ccw arc from a to b (a != b)?
    pub fn strictly_between_ccw(a: &Self, z: &Self, b: &Self) -> bool {
        if z == a || z == b {
            return false;
        }
        let cross = |p: &Self, q: &Self| -> Rat { p.re() * q.im() - p.im() * q.re() };
        let ab = cross(a, b);
        let az = cross(a, z);
        let zb = cross(z, b);
        if ab.is_positive() {
            az.is_positive() && zb.is_positive()
        } else if ab.is_negative() {
            az.is_positive() || zb.is_positive()
        } else {
            // b = a (caller excludes) or b = -a: half turn
            az.is_positive()
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        self.0.to_f64()
    }
}

impl fmt::Display for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "UnitPoint({x:.6}, {y:.6})")
    }
}

impl Serialize for UnitPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let z = GaussianRational::deserialize(d)?;
        UnitPoint::new(z).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<GaussianRational> for UnitPoint {
    type Error = ExactError;
    fn try_from(z: GaussianRational) -> Result<Self, ExactError> {
        UnitPoint::new(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn checked_construction() {
        let ok = GaussianRational::new(rat(3, 5), rat(4, 5));
        assert!(UnitPoint::new(ok).is_ok());
        let bad = GaussianRational::new(rat(1, 2), rat(1, 2));
        assert!(UnitPoint::new(bad).is_err());
    }

    #[test]
    fn tan_half_is_on_circle() {
        for n in -20..20i64 {
            let p = UnitPoint::from_tan_half(&rat(n, 7));
            assert!(p.value().norm_sqr().is_one());
        }
    }

    #[test]
    fn closure_under_mul_and_conj() {
        let a = UnitPoint::from_tan_half(&rat(1, 2));
        let b = UnitPoint::from_tan_half(&rat(-3, 4));
        let c = a.mul(&b);
        assert!(c.value().norm_sqr().is_one());
        assert!(a.conj().value().norm_sqr().is_one());
        assert_eq!(a.mul(&a.inv()), UnitPoint::one());
    }

    #[test]
    fn orientation_predicates() {
        let one = UnitPoint::one();
        let i = UnitPoint::i();
        let mi = UnitPoint::minus_i();
        // 1 -> i -> -i goes ccw
        assert_eq!(UnitPoint::orientation(&one, &i, &mi), Ordering::Greater);
        assert!(UnitPoint::strictly_between_ccw(&one, &i, &mi));
        assert!(!UnitPoint::strictly_between_ccw(&one, &mi, &i));
        // half turn: z between 1 and -1 iff upper half plane
        let m1 = UnitPoint::minus_one();
        assert!(UnitPoint::strictly_between_ccw(&one, &i, &m1));
        assert!(!UnitPoint::strictly_between_ccw(&one, &mi, &m1));
    }
}
