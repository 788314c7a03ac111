//! Budgeted search for an orbit point with expanding derivative.
//!
//! The underlying existence statement is non-constructive, so this is a plain
//! scan: iterate exactly, test |f'| > 1 by the exact rational criterion
//! Re(z) < x* where x* is the parabolic real part, and give up honestly when
//! the bit-size or iteration budget runs out.

use crate::map::MapParams;
use crate::threshold::{in_chaotic_regime, parabolic_re};
use crate::DynamicsError;
use leeyang_exact::UnitPoint;

/// Smallest m <= budget with |f'_k(z_m)| > 1, with z_m exact.
pub fn find_expanding_point(
    p: &MapParams,
    z0: &UnitPoint,
    budget: usize,
    max_bits: u64,
) -> Result<(usize, UnitPoint), DynamicsError> {
    if p.lambda.is_minus_one() {
        return Err(DynamicsError::PreconditionViolated(
            "lambda = -1 is excluded by the hypothesis".into(),
        ));
    }
    match in_chaotic_regime(p.k, &p.b, &p.lambda) {
        Ok(true) => {}
        Ok(false) => {
            return Err(DynamicsError::PreconditionViolated(
                "lambda is not in the chaotic regime Lambda_k(b)".into(),
            ))
        }
        Err(e) => return Err(e),
    }
    // |f'(z)| > 1 <=> Re(z) < x*
    let x_star = parabolic_re(p.k, &p.b);
    let mut z = z0.clone();
    for m in 0..=budget {
        if z.re() < &x_star {
            return Ok((m, z));
        }
        if m == budget {
            break;
        }
        let next = p.apply(&z);
        let bits = next
            .value()
            .re()
            .numer()
            .bits()
            .max(next.value().re().denom().bits());
        if bits > max_bits {
            return Err(DynamicsError::BudgetExceeded(format!(
                "exact iterate reached {bits} bits at step {} (cap {max_bits})",
                m + 1
            )));
        }
        z = next;
    }
    Err(DynamicsError::BudgetExceeded(format!(
        "no expanding point within {budget} iterations"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use leeyang_exact::rat;

    #[test]
    fn immediate_when_b_below_critical() {
        // b = 1/4, k = 2: min |f'_2| = 6/5 > 1, so m = 0 for every z0
        let p = MapParams::new(UnitPoint::i(), 2, rat(1, 4)).unwrap();
        for z0 in [UnitPoint::one(), UnitPoint::i(), UnitPoint::from_tan_half(&rat(2, 3))] {
            let (m, z) = find_expanding_point(&p, &z0, 10, 1 << 20).unwrap();
            assert_eq!(m, 0);
            assert_eq!(z, z0);
        }
    }

    #[test]
    fn elliptic_orbit_reaches_expansion() {
        // k = 1, lambda = i, b = 1/2: irrational rotation; some iterate of 1
        // enters Re z < -b where |f'_1| > 1
        let p = MapParams::new(UnitPoint::i(), 1, rat(1, 2)).unwrap();
        let (m, z) = find_expanding_point(&p, &UnitPoint::one(), 10_000, 1 << 22).unwrap();
        assert!(m > 0);
        // exact verification of the expanding derivative
        let d = p.deriv_mag(&z);
        assert!(d > rat(1, 1), "derivative {d} not expanding");
        // and the criterion matches: Re z < -b = parabolic_re(1, 1/2)
        assert_eq!(parabolic_re(1, &rat(1, 2)), rat(-1, 2));
        assert!(z.re() < &rat(-1, 2));
    }

    #[test]
    fn minus_one_rejected() {
        let p = MapParams::new(UnitPoint::minus_one(), 1, rat(1, 2)).unwrap();
        let r = find_expanding_point(&p, &UnitPoint::one(), 10, 1 << 20);
        assert!(matches!(r, Err(DynamicsError::PreconditionViolated(_))));
    }

    #[test]
    fn zero_budget_fails_cleanly() {
        // k = 1, b = 1/2, lambda = -1 excluded; use lambda = i and z0 = 1
        // (not expanding at step 0: Re(1) = 1 > -1/2), budget 0
        let p = MapParams::new(UnitPoint::i(), 1, rat(1, 2)).unwrap();
        let r = find_expanding_point(&p, &UnitPoint::one(), 0, 1 << 20);
        assert!(matches!(r, Err(DynamicsError::BudgetExceeded(_))));
    }
}
