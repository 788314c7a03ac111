//! Angles with a dual representation: an exact description when one exists
//! (a rational number of radians, or a rational multiple of pi) plus a
//! certified enclosure in radians that every consumer can refine decisions
//! against. The enclosure is the source of truth for comparisons; the exact
//! part is carried so that quantities like 3pi/2 stay exact end to end.

use crate::interval::Interval;
use crate::trig;
use crate::{rat_int, Rat};
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub const DEFAULT_PREC: u32 = 192;

#[derive(Clone, Debug, PartialEq)]
pub enum ExactAngle {
    /// theta = q, q rational (radians).
    Radians(Rat),
    /// theta = q * pi.
    PiMultiple(Rat),
}

#[derive(Clone, Debug)]
pub struct Angle {
    pub exact: Option<ExactAngle>,
    pub enclosure: Interval,
}

impl Angle {
    pub fn zero() -> Self {
        Angle::from_radians(Rat::zero())
    }

    pub fn from_radians(q: Rat) -> Self {
        Angle { enclosure: Interval::point(q.clone()), exact: Some(ExactAngle::Radians(q)) }
    }

    pub fn from_pi_multiple(q: Rat) -> Self {
        Angle {
            enclosure: trig::pi(DEFAULT_PREC).scale(&q),
            exact: Some(ExactAngle::PiMultiple(q)),
        }
    }

    pub fn from_interval(iv: Interval) -> Self {
        Angle { exact: None, enclosure: iv }
    }

    /// Re-derive the enclosure at a higher precision when the exact part allows.
    pub fn refine(&self, prec: u32) -> Self {
        match &self.exact {
            Some(ExactAngle::Radians(q)) => Angle::from_radians(q.clone()),
            Some(ExactAngle::PiMultiple(q)) => Angle {
                enclosure: trig::pi(prec).scale(q),
                exact: self.exact.clone(),
            },
            None => self.clone(),
        }
    }

    pub fn err(&self) -> Rat {
        self.enclosure.width()
    }

    pub fn add(&self, o: &Self) -> Self {
        let exact = match (&self.exact, &o.exact) {
            (Some(ExactAngle::Radians(a)), Some(ExactAngle::Radians(b))) => {
                Some(ExactAngle::Radians(a + b))
            }
            (Some(ExactAngle::PiMultiple(a)), Some(ExactAngle::PiMultiple(b))) => {
                Some(ExactAngle::PiMultiple(a + b))
            }
            _ => None,
        };
        Angle { exact, enclosure: self.enclosure.add(&o.enclosure) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let exact = self.exact.as_ref().map(|e| match e {
            ExactAngle::Radians(q) => ExactAngle::Radians(-q.clone()),
            ExactAngle::PiMultiple(q) => ExactAngle::PiMultiple(-q.clone()),
        });
        Angle { exact, enclosure: self.enclosure.neg() }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        let exact = self.exact.as_ref().map(|e| match e {
            ExactAngle::Radians(r) => ExactAngle::Radians(r * q),
            ExactAngle::PiMultiple(r) => ExactAngle::PiMultiple(r * q),
        });
        Angle { exact, enclosure: self.enclosure.scale(q) }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure.to_f64()
    }

    /// Certified comparison; None when the enclosures overlap.
    pub fn cmp_certain(&self, o: &Self) -> Option<std::cmp::Ordering> {
        if let (Some(a), Some(b)) = (&self.exact, &o.exact) {
            match (a, b) {
                (ExactAngle::Radians(x), ExactAngle::Radians(y)) => return Some(x.cmp(y)),
                (ExactAngle::PiMultiple(x), ExactAngle::PiMultiple(y)) => return Some(x.cmp(y)),
                _ => {}
            }
        }
        self.enclosure.cmp_certain(&o.enclosure)
    }

    pub fn two_pi() -> Self {
        Angle::from_pi_multiple(rat_int(2))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Angle", 4)?;
        match &self.exact {
            Some(ExactAngle::PiMultiple(q)) => {
                st.serialize_field("rad_num", &q.numer().to_string())?;
                st.serialize_field("rad_den", &q.denom().to_string())?;
            }
            _ => {
                st.serialize_field("rad_num", &Option::<String>::None)?;
                st.serialize_field("rad_den", &Option::<String>::None)?;
            }
        }
        st.serialize_field("float", &self.to_f64())?;
        st.serialize_field("err", &crate::gaussian::rat_to_f64(&self.err()))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn pi_multiples_stay_exact() {
        let a = Angle::from_pi_multiple(rat(1, 2));
        let b = Angle::from_pi_multiple(rat(3, 2));
        let s = a.add(&b);
        assert_eq!(s.exact, Some(ExactAngle::PiMultiple(rat_int(2))));
        assert!((s.to_f64() - std::f64::consts::TAU).abs() < 1e-12);
    }

    #[test]
    fn serde_shape() {
        let a = Angle::from_pi_multiple(rat(3, 2));
        let j = serde_json::to_value(&a).unwrap();
        assert_eq!(j["rad_num"], "3");
        assert_eq!(j["rad_den"], "2");
        assert!(j["err"].as_f64().unwrap() < 1e-20);
    }
}
