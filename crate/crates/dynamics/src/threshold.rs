//! The threshold field lambda_k(b) bounding the chaotic-regime arc.

use crate::map::MapParams;
use crate::DynamicsError;
use leeyang_exact::cinterval::CInterval;
use leeyang_exact::interval::Interval;
use leeyang_exact::{rat_int, trig, Rat, UnitPoint};
use num_traits::{One, Signed};
use std::cmp::Ordering;

/// Result of the threshold computation for (k, b).
#[derive(Clone, Debug)]
pub struct ThresholdResult {
    pub k: u32,
    pub b: Rat,
    /// false when b <= (k-1)/(k+1): the chaotic set is all of S (minus {1}
    /// at the boundary) and no interior threshold exists.
    pub exists: bool,
    /// Re of the parabolic point, exact: (k(1-b^2) - b^2 - 1)/(2b).
    pub parabolic_re: Rat,
    /// The parabolic point z* in the closed upper half-plane (enclosure).
    pub parabolic_point: Option<CInterval>,
    /// lambda_k = z* ((b z* + 1)/(z* + b))^k with Im > 0 (enclosure).
    pub lambda_k: Option<CInterval>,
    /// Arg(lambda_k) in (0, pi) (enclosure).
    pub arg_lambda_k: Option<Interval>,
}

/// Exact critical ratio (k-1)/(k+1).
pub fn critical_b(k: u32) -> Rat {
    Rat::new((k as i64 - 1).into(), (k as i64 + 1).into())
}

/// Re of the circle point where |f'_k| = 1: from Eq. (3.1),
/// k(1-b^2) = b^2 + 2b x + 1.
pub fn parabolic_re(k: u32, b: &Rat) -> Rat {
    (rat_int(k as i64) * (Rat::one() - b * b) - b * b - Rat::one()) / (rat_int(2) * b)
}

pub fn lambda_threshold(k: u32, b: &Rat, prec: u32) -> Result<ThresholdResult, DynamicsError> {
    if k < 1 || !b.is_positive() || *b >= Rat::one() {
        return Err(DynamicsError::PreconditionViolated(
            "need k >= 1 and b in (0,1)".into(),
        ));
    }
    let x = parabolic_re(k, b);
    if &x >= &Rat::one() {
        return Ok(ThresholdResult {
            k,
            b: b.clone(),
            exists: false,
            parabolic_re: x,
            parabolic_point: None,
            lambda_k: None,
            arg_lambda_k: None,
        });
    }
    // z* = x + i sqrt(1 - x^2), upper half-plane
    let one = Interval::point(Rat::one());
    let x_iv = Interval::point(x.clone());
    let im2 = one.sub(&x_iv.square());
    let im = im2.sqrt(prec).expect("1 - x^2 >= 0 for x in (-1,1)");
    let z = CInterval::new(x_iv, im);
    // lambda_k = z ((b z + 1)/(z + b))^k
    let bz1 = z.mul(&CInterval::real(b)).add(&CInterval::real(&Rat::one()));
    let zb = z.add(&CInterval::real(b));
    let ratio = bz1.div(&zb).ok_or_else(|| {
        DynamicsError::NoConvergence("z + b enclosure touches zero".into())
    })?;
    let lam = z.mul(&ratio.powi(k, prec)).round_out(prec);
    let arg = lam.arg(prec);
    Ok(ThresholdResult {
        k,
        b: b.clone(),
        exists: true,
        parabolic_re: x,
        parabolic_point: Some(z),
        lambda_k: Some(lam),
        arg_lambda_k: arg,
    })
}

/// Is lambda in the chaotic regime Lambda_k(b) (all circle fixed points
/// repelling)?
pub fn in_chaotic_regime(k: u32, b: &Rat, lambda: &UnitPoint) -> Result<bool, DynamicsError> {
    let crit = critical_b(k);
    if b < &crit {
        return Ok(true);
    }
    if b == &crit {
        return Ok(!lambda.is_one());
    }
    if lambda.is_one() {
        return Ok(false);
    }
    // lambda in Arc(lambda_k, conj(lambda_k)) <=> theta_k < Arg(lambda) < 2pi - theta_k
    for prec in [160u32, 320, 640, 1280] {
        let th = lambda_threshold(k, b, prec)?;
        let theta_k = match th.arg_lambda_k {
            Some(t) => t,
            None => continue,
        };
        let arg_l = lambda.arg(prec);
        let tau = trig::two_pi(prec);
        let upper = tau.sub(&theta_k);
        let below = arg_l.cmp_certain(&theta_k);
        let above = arg_l.cmp_certain(&upper);
        match (below, above) {
            (Some(Ordering::Less), _) => return Ok(false),
            (_, Some(Ordering::Greater)) => return Ok(false),
            (Some(Ordering::Greater), Some(Ordering::Less)) => return Ok(true),
            _ => continue,
        }
    }
    Err(DynamicsError::Indeterminate(
        "lambda is within the working error of the threshold boundary".into(),
    ))
}

/// Convenience wrapper for a full parameter set.
pub fn params_in_chaotic_regime(p: &MapParams) -> Result<bool, DynamicsError> {
    in_chaotic_regime(p.k, &p.b, &p.lambda)
}
