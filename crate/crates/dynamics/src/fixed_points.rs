//! Fixed points of f_{lambda,k} on the unit circle.
//!
//! For k = 1 the fixed-point equation is the exact quadratic
//! b z^2 + (1 - lambda) z - lambda b = 0; whether its roots lie on the circle
//! is decided exactly by the squared trace. For k >= 2 roots are isolated by
//! certified bisection on the angular displacement u(theta) - theta.

use crate::map::MapParams;
use crate::mobius::trace_squared;
use crate::DynamicsError;
use leeyang_exact::cinterval::CInterval;
use leeyang_exact::interval::Interval;
use leeyang_exact::{rat, rat_int, trig, GaussianRational, Rat, UnitPoint};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Stability {
    Attracting,
    Parabolic,
    Repelling,
}

/// A circle fixed point: exact when the algebra allows, otherwise a certified
/// enclosure. `multiplier` encloses |f'| at the point and `residual` bounds
/// |f(z) - z| for the reported point.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub point: PointEstimate,
    pub theta: Interval,
    pub multiplier: Interval,
    pub stability: Stability,
    pub residual: Rat,
}

#[derive(Clone, Debug)]
pub enum PointEstimate {
    Exact(UnitPoint),
    Approx(CInterval),
}

impl FixedPoint {
    pub fn re_enclosure(&self) -> Interval {
        match &self.point {
            PointEstimate::Exact(p) => Interval::point(p.re().clone()),
            PointEstimate::Approx(c) => c.re.clone(),
        }
    }
}

fn classify(multiplier: &Interval, tol: &Rat) -> Stability {
    let one = Rat::one();
    if multiplier.hi < one {
        Stability::Attracting
    } else if multiplier.lo > one {
        Stability::Repelling
    } else if (multiplier.hi.clone() - &one).abs() <= *tol
        || (multiplier.lo.clone() - &one).abs() <= *tol
    {
        Stability::Parabolic
    } else {
        Stability::Parabolic
    }
}

fn fp_from_theta(p: &MapParams, theta: Interval, prec: u32, tol: &Rat) -> FixedPoint {
    let (s, c) = trig::sin_cos(&theta, prec);
    let mult = multiplier_from_re(p, &c);
    let residual = theta_residual(p, &theta, prec);
    FixedPoint {
        point: PointEstimate::Approx(CInterval::new(c, s)),
        theta,
        multiplier: mult.clone(),
        stability: classify(&mult, tol),
        residual,
    }
}

fn multiplier_from_re(p: &MapParams, re: &Interval) -> Interval {
    // k (1-b^2) / (b^2 + 2 b re + 1)
    let b = &p.b;
    let num = rat_int(p.k as i64) * (Rat::one() - b * b);
    let den = re.scale(&(rat_int(2) * b)).shift(&(b * b + Rat::one()));
    Interval::point(num).div(&den).expect("denominator positive on the circle")
}

fn theta_residual(p: &MapParams, theta: &Interval, prec: u32) -> Rat {
    // |u(theta) - theta| reduced mod 2pi, upper bound
    let u = p.angle_lift(theta, prec);
    let d = u.sub(theta);
    let tau = trig::two_pi(prec);
    let j = (&d.mid() / tau.mid()).round().to_integer();
    d.sub(&tau.scale(&Rat::from_integer(j))).abs().hi
}

/// All circle fixed points of f_{lambda,k}. `tol` controls the certified
/// width of the reported enclosures (angle scale).
pub fn fixed_points_on_circle(
    p: &MapParams,
    tol: &Rat,
) -> Result<Vec<FixedPoint>, DynamicsError> {
    if !tol.is_positive() {
        return Err(DynamicsError::PreconditionViolated("tol must be positive".into()));
    }
    if p.k == 1 {
        fixed_points_mobius(p, tol)
    } else {
        fixed_points_bisection(p, tol)
    }
}

fn fixed_points_mobius(p: &MapParams, tol: &Rat) -> Result<Vec<FixedPoint>, DynamicsError> {
    let lam = p.lambda.value();
    let b = &p.b;
    let t = trace_squared(&p.lambda, b);
    let four = rat_int(4);
    match t.cmp(&four) {
        Ordering::Less => Ok(Vec::new()), // elliptic: no circle fixed points
        Ordering::Equal => {
            // parabolic double root z = (lambda - 1) / (2b), exactly on the circle
            let z = (lam - &GaussianRational::one())
                .scale(&(Rat::one() / (rat_int(2) * b)));
            let zp = UnitPoint::new(z)
                .map_err(|e| DynamicsError::PreconditionViolated(e.to_string()))?;
            let mult = multiplier_from_re(p, &Interval::point(zp.re().clone()));
            let theta = zp.arg(128);
            Ok(vec![FixedPoint {
                point: PointEstimate::Exact(zp),
                theta,
                multiplier: mult,
                stability: Stability::Parabolic,
                residual: Rat::zero(),
            }])
        }
        Ordering::Greater => {
            // hyperbolic: both roots of b z^2 + (1-lambda) z - lambda b = 0 on S
            let prec = prec_for_tol(tol);
            // exact special case lambda = 1: roots z = 1 and z = -1
            if p.lambda.is_one() {
                let mk = |z: UnitPoint| {
                    let mult = multiplier_from_re(p, &Interval::point(z.re().clone()));
                    let theta = z.arg(prec);
                    let st = classify(&mult, tol);
                    FixedPoint {
                        point: PointEstimate::Exact(z),
                        theta,
                        multiplier: mult,
                        stability: st,
                        residual: Rat::zero(),
                    }
                };
                return Ok(vec![mk(UnitPoint::one()), mk(UnitPoint::minus_one())]);
            }
            let one = GaussianRational::one();
            let a = GaussianRational::from_re(b.clone());
            let bb = &one - lam;
            let c = -&lam.scale(b);
            // z = (-bb +- sqrt(bb^2 - 4 a c)) / (2 a)
            let disc = &(&bb * &bb) - &(&a * &c).scale(&rat_int(4));
            let disc_iv = CInterval::point(&disc);
            let sq = disc_iv.sqrt(prec).ok_or_else(|| {
                DynamicsError::NoConvergence(
                    "discriminant enclosure straddles the branch cut".into(),
                )
            })?;
            let two_a = CInterval::point(&a.scale(&rat_int(2)));
            let neg_bb = CInterval::point(&-&bb);
            let mut out = Vec::new();
            for sign in [1i32, -1] {
                let root = if sign == 1 {
                    neg_bb.add(&sq)
                } else {
                    neg_bb.sub(&sq)
                };
                let z = root.div(&two_a).ok_or_else(|| {
                    DynamicsError::NoConvergence("division by 2b failed".into())
                })?;
                let mult = multiplier_from_re(p, &z.re);
                let theta = z
                    .arg(prec)
                    .unwrap_or_else(|| Interval::new(Rat::zero(), trig::two_pi(64).hi));
                let st = classify(&mult, tol);
                // residual: |f(z) - z| via the quadratic it satisfies; the
                // enclosure width already certifies it, report the box width
                let residual = z.re.width() + z.im.width();
                out.push(FixedPoint {
                    point: PointEstimate::Approx(z),
                    theta,
                    multiplier: mult,
                    stability: st,
                    residual,
                });
            }
            Ok(out)
        }
    }
}

fn prec_for_tol(tol: &Rat) -> u32 {
    let inv = tol.recip();
    (inv.ceil().to_integer().bits() as u32 + 48).max(96)
}

/// Certified root isolation of u(theta) = theta + 2 pi j over [0, 2pi).
fn fixed_points_bisection(p: &MapParams, tol: &Rat) -> Result<Vec<FixedPoint>, DynamicsError> {
    let prec = prec_for_tol(tol);
    let tau = trig::two_pi(prec);
    let grid: usize = 1 << 10;
    // Lipschitz bound for h(theta) = u(theta) - theta
    let lip = {
        let hi = p.deriv_max() - Rat::one();
        let lo = Rat::one() - p.deriv_min();
        if hi > lo { hi } else { lo }
    };
    let mut roots: Vec<Interval> = Vec::new();
    let step = tau.hi.clone() / rat_int(grid as i64);
    // evaluate u at grid points
    let mut vals: Vec<Interval> = Vec::with_capacity(grid + 1);
    for i in 0..=grid {
        let theta = Interval::point(&step * rat_int(i as i64));
        vals.push(p.angle_lift(&theta, prec));
    }
    // h(theta) = u - theta; which multiples of 2pi can it hit in each cell
    for i in 0..grid {
        let a = &step * rat_int(i as i64);
        let bth = &step * rat_int(i as i64 + 1);
        let ha = vals[i].sub(&Interval::point(a.clone()));
        let hb = vals[i + 1].sub(&Interval::point(bth.clone()));
        // candidate j range in the cell (pad by Lipschitz slack)
        let slack = &lip * &step;
        let lo_h = ha.lo.clone().min(hb.lo.clone()) - &slack;
        let hi_h = ha.hi.clone().max(hb.hi.clone()) + &slack;
        let j_lo = (&lo_h / tau.hi.clone()).floor().to_integer();
        let j_hi = (&hi_h / tau.lo.clone()).ceil().to_integer();
        let mut j = j_lo.clone();
        while j <= j_hi {
            let target = tau.scale(&Rat::from_integer(j.clone()));
            // certified signs at the cell ends
            let sa = ha.sub(&target).sign();
            let sb = hb.sub(&target).sign();
            match (sa, sb) {
                (Some(Ordering::Less), Some(Ordering::Greater))
                | (Some(Ordering::Greater), Some(Ordering::Less)) => {
                    if let Some(r) = bisect_root(p, &a, &bth, &j, prec, tol, &tau) {
                        roots.push(r);
                    }
                }
                (Some(x), Some(y)) if x == y && x != Ordering::Equal => {
                    // same strict sign at both ends: a root pair could hide
                    // inside only if |h - target| dips through zero; exclude
                    // via the Lipschitz bound
                    let min_end = ha.sub(&target).abs().lo.min(hb.sub(&target).abs().lo);
                    if min_end < &lip * &step {
                        // cannot exclude: refine by splitting this cell once
                        if let Some(r) =
                            scan_subcells(p, &a, &bth, &j, prec, tol, &tau, 8)
                        {
                            roots.push(r);
                        }
                    }
                }
                _ => {
                    // uncertain signs: treat as potential root region
                    if let Some(r) = scan_subcells(p, &a, &bth, &j, prec, tol, &tau, 8) {
                        roots.push(r);
                    }
                }
            }
            j += 1;
        }
    }
    // dedup overlapping enclosures (roots straddling cell boundaries)
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    let mut merged: Vec<Interval> = Vec::new();
    for r in roots {
        if let Some(last) = merged.last_mut() {
            if r.lo <= last.hi {
                *last = last.hull(&r);
                continue;
            }
        }
        merged.push(r);
    }
    Ok(merged
        .into_iter()
        .map(|theta| fp_from_theta(p, theta, prec, tol))
        .collect())
}

fn bisect_root(
    p: &MapParams,
    a: &Rat,
    b: &Rat,
    j: &leeyang_exact::Int,
    prec: u32,
    tol: &Rat,
    tau: &Interval,
) -> Option<Interval> {
    let target = tau.scale(&Rat::from_integer(j.clone()));
    let h = |x: &Rat| -> Interval {
        p.angle_lift(&Interval::point(x.clone()), prec)
            .sub(&Interval::point(x.clone()))
            .sub(&target)
    };
    let mut lo = a.clone();
    let mut hi = b.clone();
    let s_lo = h(&lo).sign()?;
    for _ in 0..2048 {
        if hi.clone() - &lo <= *tol {
            return Some(Interval::new(lo, hi));
        }
        let mid = (&lo + &hi) / rat_int(2);
        match h(&mid).sign() {
            Some(s) if s == s_lo => lo = mid,
            Some(Ordering::Equal) => return Some(Interval::new(mid.clone(), mid)),
            Some(_) => hi = mid,
            None => return Some(Interval::new(lo, hi)), // width-limited at this prec
        }
    }
    Some(Interval::new(lo, hi))
}

fn scan_subcells(
    p: &MapParams,
    a: &Rat,
    b: &Rat,
    j: &leeyang_exact::Int,
    prec: u32,
    tol: &Rat,
    tau: &Interval,
    parts: usize,
) -> Option<Interval> {
    let target = tau.scale(&Rat::from_integer(j.clone()));
    let step = (b - a) / rat_int(parts as i64);
    let h = |x: &Rat| -> Interval {
        p.angle_lift(&Interval::point(x.clone()), prec)
            .sub(&Interval::point(x.clone()))
            .sub(&target)
    };
    let mut prev = a.clone();
    let mut prev_sign = h(&prev).sign();
    for i in 1..=parts {
        let cur = a + &step * rat_int(i as i64);
        let cur_sign = h(&cur).sign();
        if let (Some(x), Some(y)) = (prev_sign, cur_sign) {
            if x != y {
                return bisect_root(p, &prev, &cur, j, prec, tol, tau);
            }
        }
        prev = cur;
        prev_sign = cur_sign;
    }
    None
}

/// The attracting fixed point R_k(lambda), when it exists.
pub fn attracting_fixed_point(
    p: &MapParams,
    tol: &Rat,
) -> Result<FixedPoint, DynamicsError> {
    let pts = fixed_points_on_circle(p, tol)?;
    pts.into_iter()
        .find(|f| f.stability == Stability::Attracting || f.stability == Stability::Parabolic)
        .ok_or_else(|| {
            DynamicsError::NoConvergence("no attracting/parabolic circle fixed point".into())
        })
}
