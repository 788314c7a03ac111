//! Certified enclosures of pi, arctangent, sine and cosine.
//!
//! All routines return [`Interval`]s that provably contain the true value.
//! Series are alternating (or have factorially decaying terms), so the first
//! omitted term bounds the truncation error; the interval arithmetic absorbs
//! the rounding.

use crate::interval::Interval;
use crate::{rat, rat_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

static PI_CACHE: Lazy<Mutex<HashMap<u32, Interval>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Enclosure of pi with width below 2^-prec.
pub fn pi(prec: u32) -> Interval {
    // round requested precision up to a step to make the cache effective
    let prec = prec.next_multiple_of(64).max(64);
    if let Some(iv) = PI_CACHE.lock().unwrap().get(&prec) {
        return iv.clone();
    }
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let work = prec + 16;
    let a5 = atan_small(&rat(1, 5), work);
    let a239 = atan_small(&rat(1, 239), work);
    let iv = a5.scale(&rat_int(16)).sub(&a239.scale(&rat_int(4))).round_out(prec + 8);
    PI_CACHE.lock().unwrap().insert(prec, iv.clone());
    iv
}

pub fn two_pi(prec: u32) -> Interval {
    pi(prec + 1).scale(&rat_int(2))
}

/// atan of an exact rational with |x| <= 1/2, by the alternating Taylor series.
fn atan_small(x: &Rat, prec: u32) -> Interval {
    debug_assert!(x.abs() <= rat(1, 2) + rat(1, 100));
    let x2 = x * x;
    let mut term = x.clone(); // x^(2j+1) / (2j+1), without the sign
    let mut acc = Interval::point(term.clone());
    let mut j: i64 = 1;
    let tol = Rat::new(Int::one(), Int::one() << prec);
    loop {
        term = &term * &x2;
        let contrib = &term / rat_int(2 * j + 1);
        if contrib.abs() <= tol {
            // alternating series: remainder bounded by first omitted term
            let r = contrib.abs();
            acc = acc.add(&Interval::new(-r.clone(), r));
            break;
        }
        if j % 2 == 1 {
            acc = acc.sub(&Interval::point(contrib));
        } else {
            acc = acc.add(&Interval::point(contrib));
        }
        if j % 8 == 0 {
            acc = acc.round_out(prec + 16);
            term = Interval::point(term).round_out(prec + 16).hi;
        }
        j += 1;
    }
    acc.round_out(prec + 8)
}

/// Anchors for range reduction of atan on [0, 1]: atan(x) = atan(c) + atan((x-c)/(1+cx)).
fn atan_anchor(idx: usize, prec: u32) -> Interval {
    match idx {
        0 => Interval::zero(),
        // atan(1/2) directly by series
        1 => atan_small(&rat(1, 2), prec),
        // atan(1) = pi/4
        2 => pi(prec + 2).scale(&rat(1, 4)),
        _ => unreachable!(),
    }
}

/// Enclosure of atan(x) for an exact rational x (any magnitude).
pub fn atan_rat(x: &Rat, prec: u32) -> Interval {
    if x.is_negative() {
        return atan_rat(&-x.clone(), prec).neg();
    }
    if x > &Rat::one() {
        // atan(x) = pi/2 - atan(1/x)
        return pi(prec + 2).scale(&rat(1, 2)).sub(&atan_rat(&x.recip(), prec));
    }
    // pick nearest anchor among {0, 1/2, 1}
    let c_idx = if x <= &rat(1, 4) {
        0
    } else if x <= &rat(3, 4) {
        1
    } else {
        2
    };
    let c = [Rat::zero(), rat(1, 2), Rat::one()][c_idx].clone();
    let y = (x - &c) / (Rat::one() + &c * x);
    debug_assert!(y.abs() <= rat(1, 2));
    atan_anchor(c_idx, prec + 2).add(&atan_small(&y, prec + 2)).round_out(prec + 8)
}

/// Enclosure of atan(x) over an interval.
pub fn atan_interval(x: &Interval, prec: u32) -> Interval {
    // atan is increasing
    let lo = atan_rat(&x.lo, prec);
    let hi = atan_rat(&x.hi, prec);
    Interval::new(lo.lo, hi.hi)
}

/// Argument in [0, 2pi) of the exact rational point (x, y) != (0, 0).
pub fn atan2_rat(y: &Rat, x: &Rat, prec: u32) -> Interval {
    let pi_iv = pi(prec + 3);
    // reduce to the right half-plane with |y| <= x via symmetries
    if y.is_negative() {
        // arg(x, y) = 2pi - arg(x, -y)
        return pi_iv.scale(&rat_int(2)).sub(&atan2_rat(&-y.clone(), x, prec)).round_out(prec + 8);
    }
    // now y >= 0: angle in [0, pi]
    if x.is_zero() && y.is_zero() {
        panic!("atan2 of origin");
    }
    let v = if x.is_negative() {
        // arg = pi - arg(-x, y)
        let inner = atan2_first_quadrant(y, &-x.clone(), prec + 2);
        pi_iv.sub(&inner)
    } else {
        atan2_first_quadrant(y, x, prec + 2)
    };
    v.round_out(prec + 8)
}

/// Angle of (x, y) with x >= 0, y >= 0, not both zero.
fn atan2_first_quadrant(y: &Rat, x: &Rat, prec: u32) -> Interval {
    if x.is_zero() {
        return pi(prec + 2).scale(&rat(1, 2));
    }
    if y.is_zero() {
        return Interval::zero();
    }
    if y <= x {
        atan_rat(&(y / x), prec)
    } else {
        pi(prec + 2).scale(&rat(1, 2)).sub(&atan_rat(&(x / y), prec))
    }
}

/// Enclosures of sin(t) and cos(t) where the argument is itself an enclosure.
/// Valid for |t| <= 2^40 (reduction is exact integer arithmetic).
pub fn sin_cos(t: &Interval, prec: u32) -> (Interval, Interval) {
    if t.width() > rat_int(1) {
        let unit = Interval::new(rat_int(-1), rat_int(1));
        return (unit.clone(), unit);
    }
    let work = prec + 24;
    // reduce by k * pi/2; k from the midpoint
    let half_pi = pi(work).scale(&rat(1, 2));
    let k_rat = &t.mid() / half_pi.mid();
    let k = k_rat.round().to_integer();
    let rem = t.sub(&half_pi.scale(&Rat::from_integer(k.clone())));
    // rem is now roughly within [-pi/4 - width, pi/4 + width]
    let (s, c) = sin_cos_reduced(&rem, work);
    let k_mod = ((k.clone() % 4) + 4) % 4;
    let km: i64 = num_traits::ToPrimitive::to_i64(&k_mod).unwrap();
    let out = match km {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        3 => (c.neg(), s),
        _ => unreachable!(),
    };
    (out.0.round_out(prec + 8), out.1.round_out(prec + 8))
}

/// Taylor series for |t| <= 1 (including interval width).
fn sin_cos_reduced(t: &Interval, prec: u32) -> (Interval, Interval) {
    debug_assert!(t.lo.abs() <= rat_int(1) && t.hi.abs() <= rat_int(1));
    let t2 = t.square();
    let tol = Rat::new(Int::one(), Int::one() << prec);
    // sin
    let mut sin_acc = t.clone();
    let mut term = t.clone();
    let mut j: i64 = 1;
    loop {
        term = term.mul(&t2).scale(&Rat::new(Int::one(), Int::from((2 * j) * (2 * j + 1))));
        if term.abs().hi <= tol {
            let r = term.abs().hi;
            sin_acc = sin_acc.add(&Interval::new(-r.clone(), r));
            break;
        }
        if j % 2 == 1 {
            sin_acc = sin_acc.sub(&term);
        } else {
            sin_acc = sin_acc.add(&term);
        }
        if j % 8 == 0 {
            sin_acc = sin_acc.round_out(prec + 16);
        }
        j += 1;
    }
    // cos
    let one = Interval::point(Rat::one());
    let mut cos_acc = one.clone();
    let mut term = one;
    let mut j: i64 = 1;
    loop {
        term = term.mul(&t2).scale(&Rat::new(Int::one(), Int::from((2 * j - 1) * (2 * j))));
        if term.abs().hi <= tol {
            let r = term.abs().hi;
            cos_acc = cos_acc.add(&Interval::new(-r.clone(), r));
            break;
        }
        if j % 2 == 1 {
            cos_acc = cos_acc.sub(&term);
        } else {
            cos_acc = cos_acc.add(&term);
        }
        if j % 8 == 0 {
            cos_acc = cos_acc.round_out(prec + 16);
        }
        j += 1;
    }
    (sin_acc.round_out(prec + 8), cos_acc.round_out(prec + 8))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(iv: &Interval, v: f64, tol: f64) {
        let m = iv.to_f64();
        assert!((m - v).abs() < tol, "interval {m} vs {v}");
    }

    #[test]
    fn pi_matches_f64() {
        let p = pi(128);
        close(&p, std::f64::consts::PI, 1e-15);
        assert!(p.width() < rat(1, 1 << 30));
    }

    #[test]
    fn atan_values() {
        close(&atan_rat(&rat(1, 1), 128), std::f64::consts::FRAC_PI_4, 1e-15);
        close(&atan_rat(&rat(-7, 3), 128), (-7.0f64 / 3.0).atan(), 1e-15);
        close(&atan_rat(&rat(9, 10), 128), 0.9f64.atan(), 1e-15);
    }

    #[test]
    fn atan2_quadrants() {
        let cases = [
            (rat(4, 5), rat(3, 5)),
            (rat(3, 5), rat(-4, 5)),
            (rat(-3, 5), rat(-4, 5)),
            (rat(-4, 5), rat(3, 5)),
            (rat(1, 1), rat(0, 1)),
            (rat(0, 1), rat(-1, 1)),
        ];
        for (y, x) in cases {
            let iv = atan2_rat(&y, &x, 128);
            let f = crate::gaussian::rat_to_f64(&y).atan2(crate::gaussian::rat_to_f64(&x));
            let f = if f < 0.0 { f + std::f64::consts::TAU } else { f };
            close(&iv, f, 1e-14);
        }
    }

    #[test]
    fn sin_cos_match() {
        for i in 0..20 {
            let t = rat(i, 3) - rat(7, 2);
            let (s, c) = sin_cos(&Interval::point(t.clone()), 128);
            let tf = crate::gaussian::rat_to_f64(&t);
            close(&s, tf.sin(), 1e-14);
            close(&c, tf.cos(), 1e-14);
            // Pythagorean sanity
            let one = s.square().add(&c.square());
            assert!(one.contains(&Rat::one()));
        }
    }
}
