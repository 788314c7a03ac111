//! The maps f_{lambda,k}: z -> lambda ((z+b)/(bz+1))^k, exactly on rational
//! circle points and as a monotone lift in angle coordinates.

use crate::DynamicsError;
use leeyang_exact::interval::Interval;
use leeyang_exact::{rat, rat_int, trig, GaussianRational, Rat, UnitPoint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub struct MapParams {
    pub lambda: UnitPoint,
    pub k: u32,
    pub b: Rat,
}

impl MapParams {
    pub fn new(lambda: UnitPoint, k: u32, b: Rat) -> Result<Self, DynamicsError> {
        if k < 1 {
            return Err(DynamicsError::PreconditionViolated("k must be >= 1".into()));
        }
        if !(b.is_positive() && b < Rat::one()) {
            return Err(DynamicsError::PreconditionViolated(format!(
                "b must be in (0,1), got {b}"
            )));
        }
        Ok(MapParams { lambda, k, b })
    }

    /// The base Mobius value (z+b)/(bz+1), exact; a unit point for unit z.
    pub fn base(&self, z: &UnitPoint) -> UnitPoint {
        base_mobius(z, &self.b)
    }

    /// Exact application; the result is on the circle by construction.
    pub fn apply(&self, z: &UnitPoint) -> UnitPoint {
        let w = self.base(z);
        self.lambda.mul(&w.pow(self.k as i64))
    }

    /// |f'_k| at z: k (1-b^2) / (b^2 + 2 b Re(z) + 1); independent of lambda.
    pub fn deriv_mag(&self, z: &UnitPoint) -> Rat {
        derivative_magnitude(self.k, &self.b, z.re())
    }

    /// Minimum of |f'_k| over the circle (attained at z = 1): k(1-b)/(1+b).
    pub fn deriv_min(&self) -> Rat {
        let k = rat_int(self.k as i64);
        k * (Rat::one() - &self.b) / (Rat::one() + &self.b)
    }

    /// Maximum of |f'_k| over the circle (attained at z = -1): k(1+b)/(1-b).
    pub fn deriv_max(&self) -> Rat {
        let k = rat_int(self.k as i64);
        k * (Rat::one() + &self.b) / (Rat::one() - &self.b)
    }

    /// nu = (1-b)/(1+b), the tan-half-angle multiplier of the base map.
    pub fn nu(&self) -> Rat {
        (Rat::one() - &self.b) / (Rat::one() + &self.b)
    }

    /// Monotone lift of the angle map: u(theta) = Arg(lambda) + k G(theta),
    /// where G is the lift of the base map fixing G(0) = 0, G(pi) = pi.
    /// Strictly increasing in theta over the reals.
    pub fn angle_lift(&self, theta: &Interval, prec: u32) -> Interval {
        let arg_lambda = self.lambda.arg(prec + 8);
        let g = base_lift(theta, &self.nu(), prec + 8);
        arg_lambda.add(&g.scale(&rat_int(self.k as i64))).round_out(prec)
    }

    /// Exact inverse of the k = 1 map: z = (w - lambda b) / (lambda - b w).
    pub fn invert_mobius(&self, w: &UnitPoint) -> Result<UnitPoint, DynamicsError> {
        if self.k != 1 {
            return Err(DynamicsError::PreconditionViolated(
                "invert_mobius needs k = 1".into(),
            ));
        }
        let lam = self.lambda.value();
        let num = w.value() - &lam.scale(&self.b);
        let den = lam - &w.value().scale(&self.b);
        let z = &num / &den;
        UnitPoint::new(z).map_err(|e| DynamicsError::PreconditionViolated(e.to_string()))
    }
}

/// (z+b)/(bz+1) for exact unit z.
pub fn base_mobius(z: &UnitPoint, b: &Rat) -> UnitPoint {
    let bq = GaussianRational::from_re(b.clone());
    let num = z.value() + &bq;
    let den = &z.value().scale(b) + &GaussianRational::one();
    UnitPoint::new(&num / &den).expect("Mobius of a unit point stays on the circle")
}

/// Exact derivative magnitude from Eq. (3.1): k(1-b^2)/(b^2 + 2b x + 1).
pub fn derivative_magnitude(k: u32, b: &Rat, re_z: &Rat) -> Rat {
    let one = Rat::one();
    let num = rat_int(k as i64) * (&one - &(b * b));
    let den = b * b + rat_int(2) * b * re_z + one;
    num / den
}

/// The lift G of the base angle map: G(theta) = 2 atan(nu tan(theta/2)) on
/// (-pi, pi), extended by G(theta + 2 pi j) = G(theta) + 2 pi j. Strictly
/// increasing, G(0) = 0.
pub fn base_lift(theta: &Interval, nu: &Rat, prec: u32) -> Interval {
    let two_pi = trig::two_pi(prec + 16);
    // j = round(theta / 2pi)
    let j = (&theta.mid() / two_pi.mid()).round().to_integer();
    let j_rat = Rat::from_integer(j);
    let t = theta.sub(&two_pi.scale(&j_rat));
    // t encloses a value in roughly (-pi - w, pi + w)
    let g = base_lift_principal(&t, nu, prec + 8);
    g.add(&two_pi.scale(&j_rat)).round_out(prec)
}

/// G on the principal branch; t may protrude slightly past +-pi, where the
/// odd 2pi-periodic extension G(t) = 2 pi + G(t - 2 pi) is used piecewise.
fn base_lift_principal(t: &Interval, nu: &Rat, prec: u32) -> Interval {
    // monotone: evaluate at endpoints
    let lo = base_lift_point(&t.lo, nu, prec);
    let hi = base_lift_point(&t.hi, nu, prec);
    Interval::new(lo.lo, hi.hi)
}

/// G at a single rational angle t in (-3pi/2, 3pi/2), via stable forms.
fn base_lift_point(t: &Rat, nu: &Rat, prec: u32) -> Interval {
    let pi_iv = trig::pi(prec + 8);
    if t.is_zero() {
        return Interval::zero();
    }
    if t.is_negative() {
        return base_lift_point(&-t.clone(), nu, prec).neg();
    }
    let (s, c) = trig::sin_cos(&Interval::point(t.clone()), prec + 8);
    let one = Interval::point(Rat::one());
    let denom = one.add(&c);
    if denom.lo > rat(1, 4) {
        // tan(t/2) = sin/(1+cos), |t| away from pi
        let tan_half = s.div(&denom).expect("1+cos bounded away from 0");
        let x = tan_half.scale(nu);
        two_atan(&x, prec)
    } else {
        // t near pi (or beyond): G = pi + 2 atan(nu' tan((t-pi)/2)) with
        // nu' = 1/nu, using tan((t-pi)/2) = -cos(t/2)/sin(t/2) = -(1+cos t)/sin t
        match s.sign() {
            Some(std::cmp::Ordering::Greater) => {
                // t slightly below pi
                let tan_shift = denom.neg().div(&s).expect("sin > 0");
                let x = tan_shift.div(&Interval::point(nu.clone())).expect("nu > 0");
                pi_iv.add(&two_atan(&x, prec))
            }
            Some(std::cmp::Ordering::Less) => {
                // t slightly above pi
                let tan_shift = denom.neg().div(&s).expect("sin < 0");
                let x = tan_shift.div(&Interval::point(nu.clone())).expect("nu > 0");
                pi_iv.add(&two_atan(&x, prec))
            }
            _ => {
                // t indistinguishable from pi at this precision
                let w = Interval::new(-s.abs().hi.clone(), s.abs().hi.clone());
                let spread = w.scale(&(Rat::one() / nu)).scale(&rat_int(4));
                pi_iv.add(&spread)
            }
        }
    }
}

fn two_atan(x: &Interval, prec: u32) -> Interval {
    trig::atan_interval(x, prec).scale(&rat_int(2))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitPoint {
    pub step: usize,
    pub re: f64,
    pub im: f64,
    pub arg: f64,
    pub deriv_mag: f64,
    /// None in exact mode; Some(bound) on |reported - true| in float mode.
    pub err_bound: Option<f64>,
    #[serde(skip)]
    pub exact: Option<UnitPoint>,
}

#[derive(Clone, Debug)]
pub enum OrbitMode {
    /// Exact iterates; errors out when coordinate sizes exceed the bit budget.
    Exact { max_bits: u64 },
    /// Fixed-precision iterates with a per-step worst-case error bound
    /// (multiplies by sup|f'| each step, so it is honest but can go vacuous).
    Float { prec: u32 },
    /// Exact for the first `exact_steps`, then float.
    Auto { exact_steps: usize, prec: u32 },
}

impl Default for OrbitMode {
    fn default() -> Self {
        OrbitMode::Auto { exact_steps: 64, prec: 256 }
    }
}

fn unit_size_bits(z: &UnitPoint) -> u64 {
    let g = z.value();
    g.re().numer().bits()
        .max(g.re().denom().bits())
        .max(g.im().numer().bits())
        .max(g.im().denom().bits())
}

/// The orbit z0, f(z0), ..., f^n(z0).
pub fn orbit(
    p: &MapParams,
    z0: &UnitPoint,
    n: usize,
    mode: &OrbitMode,
) -> Result<Vec<OrbitPoint>, DynamicsError> {
    let mut out = Vec::with_capacity(n + 1);
    let lip = p.deriv_max();
    let mut cur = z0.clone();
    let mut float_state: Option<(Rat, Rat, Rat)> = None; // re, im, err
    let (exact_limit, prec) = match mode {
        OrbitMode::Exact { max_bits } => (*max_bits, 0u32),
        OrbitMode::Float { prec } => (0, *prec),
        OrbitMode::Auto { exact_steps: _, prec } => (u64::MAX, *prec),
    };
    let exact_steps_cap = match mode {
        OrbitMode::Auto { exact_steps, .. } => *exact_steps,
        OrbitMode::Exact { .. } => usize::MAX,
        OrbitMode::Float { .. } => 0,
    };
    for step in 0..=n {
        match &float_state {
            None => {
                let (re_f, im_f) = cur.to_f64();
                let d = derivative_magnitude(p.k, &p.b, cur.re());
                out.push(OrbitPoint {
                    step,
                    re: re_f,
                    im: im_f,
                    arg: im_f.atan2(re_f).rem_euclid(std::f64::consts::TAU),
                    deriv_mag: leeyang_exact::gaussian::rat_to_f64(&d),
                    err_bound: None,
                    exact: Some(cur.clone()),
                });
                if step == n {
                    break;
                }
                let next = p.apply(&cur);
                let bits = unit_size_bits(&next);
                let over_budget = bits > exact_limit;
                let over_steps = step + 1 > exact_steps_cap;
                if over_budget || over_steps {
                    match mode {
                        OrbitMode::Exact { max_bits } => {
                            return Err(DynamicsError::BudgetExceeded(format!(
                                "exact orbit coordinates reached {bits} bits (cap {max_bits}) at step {}",
                                step + 1
                            )));
                        }
                        _ => {
                            let err = Rat::zero();
                            float_state = Some((
                                round_dyadic(next.re(), prec),
                                round_dyadic(next.im(), prec),
                                err + rat(1, 1i64 << 40),
                            ));
                        }
                    }
                } else {
                    cur = next;
                }
            }
            Some((re, im, err)) => {
                let (re_f, im_f) = (
                    leeyang_exact::gaussian::rat_to_f64(re),
                    leeyang_exact::gaussian::rat_to_f64(im),
                );
                let d = derivative_magnitude(p.k, &p.b, re);
                out.push(OrbitPoint {
                    step,
                    re: re_f,
                    im: im_f,
                    arg: im_f.atan2(re_f).rem_euclid(std::f64::consts::TAU),
                    deriv_mag: leeyang_exact::gaussian::rat_to_f64(&d),
                    err_bound: Some(leeyang_exact::gaussian::rat_to_f64(err)),
                    exact: None,
                });
                if step == n {
                    break;
                }
                let (nre, nim) = apply_approx(p, re, im, prec);
                let mut nerr = err * &lip + rat(1, 1i64 << 40);
                if nerr > rat_int(4) {
                    nerr = rat_int(4); // vacuous beyond the circle diameter
                }
                float_state = Some((nre, nim, nerr));
            }
        }
    }
    Ok(out)
}

fn round_dyadic(q: &Rat, prec: u32) -> Rat {
    let scale = num_bigint::BigInt::from(1u8) << prec;
    let s = q * Rat::from_integer(scale.clone());
    Rat::new(s.round().to_integer(), scale)
}

/// One application in rounded rational complex arithmetic.
fn apply_approx(p: &MapParams, re: &Rat, im: &Rat, prec: u32) -> (Rat, Rat) {
    let z = GaussianRational::new(re.clone(), im.clone());
    let bq = GaussianRational::from_re(p.b.clone());
    let num = &z + &bq;
    let den = &z.scale(&p.b) + &GaussianRational::one();
    let w = &num / &den;
    let mut acc = GaussianRational::one();
    for _ in 0..p.k {
        acc = &acc * &w;
        acc = GaussianRational::new(round_dyadic(acc.re(), prec), round_dyadic(acc.im(), prec));
    }
    let res = p.lambda.value() * &acc;
    (round_dyadic(res.re(), prec), round_dyadic(res.im(), prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use leeyang_exact::rat;

    fn params(lam: UnitPoint, k: u32, b: Rat) -> MapParams {
        MapParams::new(lam, k, b).unwrap()
    }

    #[test]
    fn apply_at_one_gives_lambda() {
        for k in 1..=4 {
            let p = params(UnitPoint::i(), k, rat(1, 3));
            assert_eq!(p.apply(&UnitPoint::one()), UnitPoint::i());
        }
    }

    #[test]
    fn apply_at_minus_one() {
        // z = -1 -> lambda (-1)^k
        let p2 = params(UnitPoint::i(), 2, rat(2, 5));
        assert_eq!(p2.apply(&UnitPoint::minus_one()), UnitPoint::i());
        let p3 = params(UnitPoint::i(), 3, rat(2, 5));
        assert_eq!(p3.apply(&UnitPoint::minus_one()), UnitPoint::minus_i());
    }

    #[test]
    fn spec_example_k2_b_half() {
        let p = params(UnitPoint::i(), 2, rat(1, 2));
        assert_eq!(p.apply(&UnitPoint::minus_one()), UnitPoint::i());
    }

    #[test]
    fn result_stays_on_circle() {
        let p = params(UnitPoint::from_tan_half(&rat(3, 7)), 3, rat(4, 9));
        let z = UnitPoint::from_tan_half(&rat(-11, 5));
        let w = p.apply(&z);
        assert!(w.value().norm_sqr() == rat(1, 1));
    }

    #[test]
    fn derivative_values() {
        // z = 1: k(1-b)/(1+b)
        assert_eq!(derivative_magnitude(3, &rat(1, 2), &rat(1, 1)), rat(1, 1));
        // z = -1, k = 1: (1+b)/(1-b)
        assert_eq!(derivative_magnitude(1, &rat(1, 2), &rat(-1, 1)), rat(3, 1));
        // k = 2, b = 1/4, z = i: 2(15/16)/(1/16 + 1) = 30/17
        assert_eq!(derivative_magnitude(2, &rat(1, 4), &rat(0, 1)), rat(30, 17));
    }

    #[test]
    fn lift_is_monotone_and_consistent() {
        let p = params(UnitPoint::i(), 2, rat(1, 4));
        let prec = 96;
        let mut last: Option<Rat> = None;
        for j in 0..24i64 {
            let theta = Interval::point(rat(j, 4) - rat(3, 1));
            let u = p.angle_lift(&theta, prec);
            if let Some(prev) = last {
                assert!(u.lo > prev, "lift not increasing");
            }
            last = Some(u.hi.clone());
            // consistency: u mod 2pi equals Arg f(e^{i theta})
            let z = leeyang_exact::rational_circle_point(
                &leeyang_exact::Angle::from_radians(rat(j, 4) - rat(3, 1)),
                &rat(1, 1 << 24),
            );
            let w = p.apply(&z);
            let direct = w.arg(prec);
            let tau = leeyang_exact::trig::two_pi(prec);
            // u - direct should be close to a multiple of 2pi
            let diff = u.sub(&direct);
            let m = (&diff.mid() / tau.mid()).round().to_integer();
            let resid = diff.sub(&tau.scale(&Rat::from_integer(m)));
            assert!(
                resid.abs().hi < rat(1, 1 << 20),
                "lift inconsistent with direct Arg at j={j}: {}",
                resid.abs().hi
            );
        }
    }

    #[test]
    fn orbit_fixed_point_is_constant() {
        let p = params(UnitPoint::one(), 2, rat(1, 2));
        let pts = orbit(&p, &UnitPoint::one(), 10, &OrbitMode::default()).unwrap();
        assert_eq!(pts.len(), 11);
        for pt in pts {
            assert_eq!(pt.exact.unwrap(), UnitPoint::one());
        }
    }

    #[test]
    fn exact_orbit_budget_errors() {
        let p = params(UnitPoint::i(), 2, rat(1, 2));
        let r = orbit(&p, &UnitPoint::from_tan_half(&rat(1, 3)), 200, &OrbitMode::Exact { max_bits: 2000 });
        assert!(matches!(r, Err(DynamicsError::BudgetExceeded(_))));
    }

    #[test]
    fn float_orbit_tracks_exact_prefix() {
        let p = params(UnitPoint::i(), 1, rat(1, 2));
        let z0 = UnitPoint::one();
        let exact = orbit(&p, &z0, 30, &OrbitMode::Exact { max_bits: 1 << 20 }).unwrap();
        let float = orbit(&p, &z0, 30, &OrbitMode::Float { prec: 192 }).unwrap();
        for (e, f) in exact.iter().zip(float.iter()) {
            assert!((e.re - f.re).abs() < 1e-9 && (e.im - f.im).abs() < 1e-9);
        }
    }

    #[test]
    fn invert_mobius_roundtrip() {
        let p = params(UnitPoint::i(), 1, rat(1, 4));
        let z = UnitPoint::from_tan_half(&rat(5, 8));
        let w = p.apply(&z);
        assert_eq!(p.invert_mobius(&w).unwrap(), z);
    }
}
