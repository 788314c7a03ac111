//! Mobius classification of the k = 1 map and the rational-rotation decision.

use crate::DynamicsError;
use leeyang_exact::{rat_int, Int, Rat, UnitPoint};
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

/// tr^2 of f_{lambda,1} = 2 (Re(lambda) + 1) / (1 - b^2); exact and real.
pub fn trace_squared(lambda: &UnitPoint, b: &Rat) -> Rat {
    let x = lambda.re();
    rat_int(2) * (x + Rat::one()) / (Rat::one() - b * b)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MobiusClass {
    /// Conjugate to a rotation by theta with cos(theta) = tr^2/2 - 1.
    Elliptic { rotation_cos: Rat },
    Parabolic,
    Hyperbolic,
}

pub fn mobius_classify(lambda: &UnitPoint, b: &Rat) -> MobiusClass {
    let t = trace_squared(lambda, b);
    let four = rat_int(4);
    if t < four {
        MobiusClass::Elliptic { rotation_cos: t / rat_int(2) - Rat::one() }
    } else if t == four {
        MobiusClass::Parabolic
    } else {
        MobiusClass::Hyperbolic
    }
}

/// Known rational points on E_t: Y^2 = X^3 - (t-2) t X^2 + t^2 X for the
/// only candidate traces t = 1, 2, 3 of a rational elliptic rotation. The
/// curves all have rank zero; the torsion points are tabulated here.
pub fn known_curve_points(t: u8) -> Vec<(Rat, Rat)> {
    match t {
        1 | 3 => vec![(Rat::zero(), Rat::zero())],
        2 => vec![
            (Rat::zero(), Rat::zero()),
            (rat_int(2), rat_int(4)),
            (rat_int(2), rat_int(-4)),
        ],
        _ => panic!("only t in {{1,2,3}} tabulated"),
    }
}

/// Decides whether f_{lambda,1} is conjugate to a rational rotation.
///
/// Rational rotation forces t = tr^2 to be a rational algebraic integer in
/// [0,4), hence t in {0,1,2,3}; t = 0 means lambda = -1 (excluded); for the
/// remaining traces the rational points of E_t would force X = t(1+b)/(1-b)
/// into {0, 2}, impossible for b in (0,1). So the answer is always `false`
/// on valid inputs.
pub fn is_rational_rotation(lambda: &UnitPoint, b: &Rat) -> Result<bool, DynamicsError> {
    if lambda.is_one() || lambda.is_minus_one() {
        return Err(DynamicsError::PreconditionViolated(
            "lambda must differ from +-1".into(),
        ));
    }
    let t = trace_squared(lambda, b);
    match mobius_classify(lambda, b) {
        MobiusClass::Elliptic { .. } => {}
        _ => {
            return Err(DynamicsError::PreconditionViolated(
                "map is not elliptic".into(),
            ))
        }
    }
    if !t.denom().is_one() {
        // not an algebraic integer: irrational rotation
        return Ok(false);
    }
    // t in {1, 2, 3}: check X = t (1+b)/(1-b) against the known points
    let x = &t * (Rat::one() + b) / (Rat::one() - b);
    let t_small: u8 = match t.numer().to_string().parse() {
        Ok(v) if (1..=3u8).contains(&v) => v,
        _ => return Ok(false),
    };
    let hit = known_curve_points(t_small).iter().any(|(px, _)| px == &x);
    Ok(hit)
}

/// Regression tripwire: enumerate rational points (X, Y) on E_t with
/// X = m/e^2, |m| <= height, e^2 <= height, and compare against the table.
pub fn curve_point_search(t: u8, height: i64) -> Vec<(Rat, Rat)> {
    assert!((1..=3).contains(&t));
    let a2 = -Int::from((t as i64 - 2) * t as i64);
    let a4 = Int::from((t as i64) * (t as i64));
    let mut out = Vec::new();
    let mut e = 1i64;
    while e * e <= height {
        for m in -height..=height {
            let mi = Int::from(m);
            let e2 = Int::from(e * e);
            let e4 = &e2 * &e2;
            // n^2 = m^3 + a2 m^2 e^2 + a4 m e^4
            let val = &mi * &mi * &mi + &a2 * &mi * &mi * &e2 + &a4 * &mi * &e4;
            if val.is_negative() {
                continue;
            }
            let n = val.sqrt();
            if &n * &n == val {
                let x = Rat::new(mi.clone(), e2.clone());
                let y = Rat::new(n.clone(), Int::from(e * e * e));
                if !out.contains(&(x.clone(), y.clone())) {
                    out.push((x.clone(), y.clone()));
                    if !n.is_zero() {
                        out.push((x, -y));
                    }
                }
            }
        }
        e += 1;
    }
    out.sort_by(|a, b| (a.0.clone(), a.1.clone()).cmp(&(b.0.clone(), b.1.clone())));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use leeyang_exact::rat;

    #[test]
    fn trace_values() {
        // lambda = -1 -> t = 0
        assert_eq!(trace_squared(&UnitPoint::minus_one(), &rat(1, 2)), rat(0, 1));
        // lambda = 1, b = 1/2 -> 16/3
        assert_eq!(trace_squared(&UnitPoint::one(), &rat(1, 2)), rat(16, 3));
        // lambda = i, b = 1/2 -> 8/3
        assert_eq!(trace_squared(&UnitPoint::i(), &rat(1, 2)), rat(8, 3));
    }

    #[test]
    fn classification() {
        assert_eq!(
            mobius_classify(&UnitPoint::minus_one(), &rat(1, 2)),
            MobiusClass::Elliptic { rotation_cos: rat(-1, 1) }
        );
        assert_eq!(mobius_classify(&UnitPoint::one(), &rat(1, 2)), MobiusClass::Hyperbolic);
        assert_eq!(
            mobius_classify(&UnitPoint::i(), &rat(1, 2)),
            MobiusClass::Elliptic { rotation_cos: rat(1, 3) }
        );
    }

    #[test]
    fn irrational_rotation_decision() {
        // lambda = i, b = 1/2: elliptic, t = 8/3 non-integer -> irrational
        assert_eq!(is_rational_rotation(&UnitPoint::i(), &rat(1, 2)).unwrap(), false);
        // lambda = +-1 rejected
        assert!(is_rational_rotation(&UnitPoint::minus_one(), &rat(1, 2)).is_err());
        assert!(is_rational_rotation(&UnitPoint::one(), &rat(1, 2)).is_err());
        // hyperbolic input rejected
        assert!(is_rational_rotation(&UnitPoint::from_tan_half(&rat(1, 50)), &rat(1, 2)).is_err());
        // a non-axis elliptic point in the left half plane
        let p = UnitPoint::from_tan_half(&rat(7, 3));
        assert_eq!(is_rational_rotation(&p, &rat(2, 5)).unwrap(), false);
    }

    #[test]
    fn curve_search_matches_table() {
        for t in 1..=3u8 {
            let found = curve_point_search(t, 2000);
            let mut table = known_curve_points(t);
            table.sort_by(|a, b| (a.0.clone(), a.1.clone()).cmp(&(b.0.clone(), b.1.clone())));
            assert_eq!(found, table, "unexpected rational points on E_{t}");
        }
    }
}
