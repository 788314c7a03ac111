//! Rectangular complex enclosures built on [`Interval`].

use crate::gaussian::GaussianRational;
use crate::interval::Interval;
use crate::trig;
use crate::unit::UnitPoint;
use crate::Rat;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn point(z: &GaussianRational) -> Self {
        CInterval { re: Interval::point(z.re().clone()), im: Interval::point(z.im().clone()) }
    }

    pub fn from_unit(z: &UnitPoint) -> Self {
        Self::point(z.value())
    }

    pub fn new(re: Interval, im: Interval) -> Self {
        CInterval { re, im }
    }

    pub fn real(q: &Rat) -> Self {
        CInterval { re: Interval::point(q.clone()), im: Interval::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        CInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn conj(&self) -> Self {
        CInterval { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    /// Division; None when the denominator enclosure touches zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sqr();
        if n.contains(&Rat::zero()) {
            return None;
        }
        let num = self.mul(&o.conj());
        Some(CInterval { re: num.re.div(&n)?, im: num.im.div(&n)? })
    }

    pub fn powi(&self, e: u32, prec: u32) -> Self {
        let mut acc = CInterval::real(&Rat::from_integer(1.into()));
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).round_out(prec);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).round_out(prec);
            }
        }
        acc
    }

    pub fn round_out(&self, prec: u32) -> Self {
        CInterval { re: self.re.round_out(prec), im: self.im.round_out(prec) }
    }

    /// Enclosure of sqrt with the principal branch (requires the enclosure to
    /// avoid the branch cut ambiguity: the imaginary sign must be determined,
    /// or the real part must be certainly nonnegative).
    pub fn sqrt(&self, prec: u32) -> Option<Self> {
        let r = self.norm_sqr().sqrt(prec)?; // |z|^2 -> |z|
        let half = crate::rat(1, 2);
        let re2 = r.add(&self.re).scale(&half);
        let im2 = r.sub(&self.re).scale(&half);
        let re_s = re2.sqrt(prec)?;
        let im_s = im2.sqrt(prec)?;
        match self.im.sign() {
            Some(std::cmp::Ordering::Less) => Some(CInterval { re: re_s, im: im_s.neg() }),
            Some(_) => Some(CInterval { re: re_s, im: im_s }),
            None => {
                if self.re.sign() == Some(std::cmp::Ordering::Greater) {
                    // near the positive real axis: hull of both branches' im
                    Some(CInterval { re: re_s, im: im_s.neg().hull(&im_s) })
                } else {
                    None
                }
            }
        }
    }

    /// Argument in [0, 2pi) when the rectangle avoids the origin and the
    /// positive-real branch cut; None otherwise.
    pub fn arg(&self, prec: u32) -> Option<Interval> {
        let re_sign = self.re.sign();
        let im_sign = self.im.sign();
        if im_sign.is_none() && re_sign != Some(std::cmp::Ordering::Less) {
            return None; // straddles the cut (or contains origin)
        }
        if im_sign.is_none() && re_sign == Some(std::cmp::Ordering::Less) {
            // left half-plane: arg in (pi/2, 3pi/2), monotone decreasing in im
            let a1 = trig::atan2_rat(&self.im.lo, &self.re.hi, prec);
            let a0 = trig::atan2_rat(&self.im.hi, &self.re.hi, prec);
            // widen by the re variation
            let b1 = trig::atan2_rat(&self.im.lo, &self.re.lo, prec);
            let b0 = trig::atan2_rat(&self.im.hi, &self.re.lo, prec);
            let lo = a0.lo.clone().min(b0.lo.clone());
            let hi = a1.hi.clone().max(b1.hi.clone());
            return Some(Interval::new(lo, hi));
        }
        // im sign determined: evaluate at the four corners; arg is monotone in
        // each coordinate within a half-plane, so corners bound it.
        let corners = [
            (&self.im.lo, &self.re.lo),
            (&self.im.lo, &self.re.hi),
            (&self.im.hi, &self.re.lo),
            (&self.im.hi, &self.re.hi),
        ];
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for (y, x) in corners {
            if y.is_zero() && x.is_zero() {
                return None;
            }
            let a = trig::atan2_rat(y, x, prec);
            lo = Some(match lo {
                None => a.lo.clone(),
                Some(v) => v.min(a.lo.clone()),
            });
            hi = Some(match hi {
                None => a.hi,
                Some(v) => v.max(a.hi),
            });
        }
        Some(Interval::new(lo.unwrap(), hi.unwrap()))
    }

    pub fn abs(&self, prec: u32) -> Interval {
        self.norm_sqr().sqrt(prec).expect("norm_sqr is nonnegative")
    }

    pub fn contains(&self, z: &GaussianRational) -> bool {
        self.re.contains(z.re()) && self.im.contains(z.im())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn mul_div_roundtrip() {
        let z = CInterval::point(&GaussianRational::new(rat(1, 3), rat(-2, 7)));
        let w = CInterval::point(&GaussianRational::new(rat(5, 2), rat(1, 9)));
        let p = z.mul(&w);
        let q = p.div(&w).unwrap();
        let orig = GaussianRational::new(rat(1, 3), rat(-2, 7));
        assert!(q.contains(&orig));
    }

    #[test]
    fn sqrt_squares_back() {
        let z = CInterval::point(&GaussianRational::new(rat(-3, 4), rat(2, 5)));
        let s = z.sqrt(128).unwrap();
        let back = s.mul(&s);
        assert!(back.contains(&GaussianRational::new(rat(-3, 4), rat(2, 5))));
    }

    #[test]
    fn arg_of_unit_points() {
        let p = UnitPoint::from_tan_half(&rat(1, 2)); // (3/5, 4/5)
        let a = CInterval::from_unit(&p).arg(128).unwrap();
        let expect = (4.0f64 / 5.0).atan2(3.0 / 5.0);
        assert!((a.to_f64() - expect).abs() < 1e-12);
    }
}
