//! Rational interval arithmetic with outward rounding to dyadic endpoints.
//!
//! Endpoints are `BigRational`s whose denominators are kept (by rounding) at
//! powers of two of bounded size, so chains of operations cannot blow up the
//! representation. Every operation is an enclosure: the true real value is
//! always contained in the result.

use crate::{rat_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A closed interval [lo, hi] with rational endpoints.
#[derive(Clone, PartialEq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

/// Floor of q * 2^prec as an integer.
fn scaled_floor(q: &Rat, prec: u32) -> Int {
    let n = q.numer() << prec;
    num_integer::Integer::div_floor(&n, q.denom())
}

fn dyadic(n: Int, prec: u32) -> Rat {
    Rat::new(n, Int::one() << prec)
}

impl Interval {
    pub fn point(q: Rat) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Interval::point(Rat::zero())
    }

    /// Round endpoints outward to denominators 2^prec.
    pub fn round_out(&self, prec: u32) -> Self {
        let lo = dyadic(scaled_floor(&self.lo, prec), prec);
        let hi_f = scaled_floor(&self.hi, prec);
        let hi = if &dyadic(hi_f.clone(), prec) == &self.hi {
            self.hi.clone()
        } else {
            dyadic(hi_f + 1, prec)
        };
        Interval { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, q: &Rat) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Sign of every point in the interval, if uniform.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison against another interval: Some(Less) means every
    /// point of self is below every point of other.
    pub fn cmp_certain(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_negative() {
            Interval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            Interval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    pub fn shift(&self, q: &Rat) -> Self {
        Interval { lo: &self.lo + q, hi: &self.hi + q }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains(&Rat::zero()) {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.recip()?))
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: Rat::zero(), hi: self.hi.clone().max(-self.lo.clone()) }
        } else if self.hi.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        Interval { lo: &a.lo * &a.lo, hi: &a.hi * &a.hi }
    }

    /// Enclosure of sqrt. Requires hi >= 0; lo is clamped at zero.
    pub fn sqrt(&self, prec: u32) -> Option<Self> {
        if self.hi.is_negative() {
            return None;
        }
        let lo = if self.lo.is_negative() { Rat::zero() } else { sqrt_down(&self.lo, prec) };
        let hi = sqrt_up(&self.hi, prec);
        Some(Interval { lo, hi })
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        crate::gaussian::rat_to_f64(&self.mid())
    }
}

/// Rational lower bound on sqrt(q) for q >= 0.
pub fn sqrt_down(q: &Rat, prec: u32) -> Rat {
    debug_assert!(!q.is_negative());
    if q.is_zero() {
        return Rat::zero();
    }
    // floor(sqrt(q * 4^prec)) needs sqrt(n * d * 4^prec) / (d * 2^prec)
    let scaled = q.numer() * q.denom() << (2 * prec);
    let root = scaled.sqrt(); // floor square root of a BigInt
    Rat::new(root, q.denom() << prec)
}

/// Rational upper bound on sqrt(q) for q >= 0.
pub fn sqrt_up(q: &Rat, prec: u32) -> Rat {
    debug_assert!(!q.is_negative());
    if q.is_zero() {
        return Rat::zero();
    }
    let scaled = q.numer() * q.denom() << (2 * prec);
    let root = scaled.sqrt();
    let exact = &root * &root == scaled;
    let n = if exact { root } else { root + 1 };
    Rat::new(n, q.denom() << prec)
}

/// A rational approximation s of sqrt(q) with s in sqrt(q) * (1 +- 2^-rel_bits),
/// together with the guarantee s > 0 for q > 0.
pub fn sqrt_approx(q: &Rat, rel_bits: u32) -> Rat {
    debug_assert!(!q.is_negative());
    if q.is_zero() {
        return Rat::zero();
    }
    // absolute precision scaled to the magnitude of the root
    let bits = (q.numer().bits() as i64 - q.denom().bits() as i64) / 2;
    let prec = (rel_bits as i64 + 4 - bits.min(0)).max(8) as u32;
    sqrt_down(q, prec)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.*e}..width {:.3e}]",
            6,
            self.to_f64(),
            crate::gaussian::rat_to_f64(&self.width())
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rounding_is_outward() {
        let iv = Interval::new(rat(1, 3), rat(2, 3));
        let r = iv.round_out(16);
        assert!(r.lo <= rat(1, 3) && rat(2, 3) <= r.hi);
        assert!(r.width() - iv.width() < rat(1, 1 << 14));
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let q = rat(2, 1);
        let lo = sqrt_down(&q, 64);
        let hi = sqrt_up(&q, 64);
        assert!(&lo * &lo <= q && q <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1 << 62));
    }

    #[test]
    fn mul_contains_products() {
        let a = Interval::new(rat(-1, 2), rat(1, 3));
        let b = Interval::new(rat(2, 5), rat(7, 5));
        let p = a.mul(&b);
        assert!(p.contains(&(rat(-1, 2) * rat(7, 5))));
        assert!(p.contains(&(rat(1, 3) * rat(2, 5))));
    }
}
