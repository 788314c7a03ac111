//! Complex numbers with arbitrary-precision rational real and imaginary parts.

use crate::{ExactError, Int, Rat};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An element of Q[i]. Both components are kept in canonical reduced form by
/// the underlying `BigRational`, so equality is structural and arithmetic is
/// exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: Rat,
    im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_re(re: Rat) -> Self {
        GaussianRational { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_re(Rat::from_integer(Int::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Rat::zero(), im: Rat::one() }
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|^2, exactly.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GaussianRational { re: &self.re * c, im: &self.im * c }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn pow(&self, mut e: i64) -> Result<Self, ExactError> {
        let mut base = if e < 0 {
            e = -e;
            self.inv()?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact squared distance |self - other|^2.
    pub fn dist_sqr(&self, other: &Self) -> Rat {
        (self - other).norm_sqr()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    let f = |i: &Int| -> f64 {
        let s = i.to_string();
        s.parse::<f64>().unwrap_or(f64::NAN)
    };
    let n = f(q.numer());
    let d = f(q.denom());
    if n.is_finite() && d.is_finite() && d != 0.0 {
        n / d
    } else {
        // fall back through a scaled representation for huge components
        let bits = q.numer().bits().max(q.denom().bits()) as i64;
        let shift = (bits - 500).max(0);
        let num = q.numer() >> shift;
        let den = q.denom() >> shift;
        f(&num) / f(&den)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero GaussianRational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: Self) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", fmt_rat(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_gaussian(s)
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianWire {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussianWire { re: fmt_rat(&self.re), im: fmt_rat(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = GaussianWire::deserialize(d)?;
        let re = crate::parse::parse_rat(&w.re).map_err(D::Error::custom)?;
        let im = crate::parse::parse_rat(&w.im).map_err(D::Error::custom)?;
        Ok(GaussianRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn basic_ops_are_exact() {
        let z = GaussianRational::new(rat(1, 2), rat(1, 3));
        let w = GaussianRational::new(rat(-2, 5), rat(7, 4));
        let p = &z * &w;
        let q = &p / &w;
        assert_eq!(q, z);
        assert_eq!((&z - &z), GaussianRational::zero());
        let n = z.norm_sqr();
        assert_eq!(n, rat(1, 4) + rat(1, 9));
    }

    #[test]
    fn pow_and_inverse() {
        let i = GaussianRational::i();
        assert_eq!(i.pow(2).unwrap(), GaussianRational::from_int(-1));
        assert_eq!(i.pow(-1).unwrap(), -&i);
        assert_eq!(i.pow(0).unwrap(), GaussianRational::one());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for s in ["1", "-1", "i", "-i", "1/2+1/3i", "3/5-4/5i", "0", "-7/3i"] {
            let z: GaussianRational = s.parse().unwrap();
            let back: GaussianRational = z.to_string().parse().unwrap();
            assert_eq!(z, back, "roundtrip of {s}");
        }
    }

    #[test]
    fn serde_wire_format() {
        let z = GaussianRational::new(rat(3, 5), rat(-4, 5));
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(j, r#"{"re":"3/5","im":"-4/5"}"#);
        let back: GaussianRational = serde_json::from_str(&j).unwrap();
        assert_eq!(z, back);
    }
}
