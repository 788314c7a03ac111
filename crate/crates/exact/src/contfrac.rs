//! Continued-fraction rounding: the unique p/q with q <= K within 1/(2K^2).

use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};

/// Returns the unique rational p/q with 1 <= q <= K and |alpha - p/q| < 1/(2K^2)
/// when it exists. By Legendre's theorem any such fraction is a convergent of
/// alpha, so it suffices to inspect the convergents with denominator <= K.
pub fn continued_fraction_round(alpha: &Rat, k_bound: &Int) -> Option<Rat> {
    assert!(k_bound >= &Int::one(), "K must be >= 1");
    let bound = Rat::new(Int::one(), Int::from(2) * k_bound * k_bound);
    let mut best: Option<Rat> = None;
    for c in convergents(alpha) {
        if c.denom() > k_bound {
            break;
        }
        best = Some(c);
    }
    let cand = best?;
    if (alpha - &cand).abs() < bound {
        Some(cand)
    } else {
        None
    }
}

/// The continued-fraction convergents of alpha, last one equal to alpha.
pub fn convergents(alpha: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut num = alpha.numer().clone();
    let mut den = alpha.denom().clone();
    // h/k recurrences
    let (mut h0, mut h1) = (Int::one(), alpha.floor().to_integer());
    let (mut k0, mut k1) = (Int::zero(), Int::one());
    let mut a = h1.clone();
    loop {
        out.push(Rat::new(h1.clone(), k1.clone()));
        let rem = &num - &a * &den;
        if rem.is_zero() {
            break;
        }
        num = den;
        den = rem;
        a = num_integer::Integer::div_floor(&num, &den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    out
}

/// Brute-force oracle: scan all denominators 1..=K.
pub fn brute_force_round(alpha: &Rat, k_bound: i64) -> Option<Rat> {
    let bound = Rat::new(Int::one(), Int::from(2 * k_bound * k_bound));
    for q in 1..=k_bound {
        let p = (alpha * Rat::from_integer(Int::from(q))).round().to_integer();
        let cand = Rat::new(p, Int::from(q));
        if (alpha - &cand).abs() < bound {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn self_representable() {
        assert_eq!(continued_fraction_round(&rat(1, 3), &Int::from(10)), Some(rat(1, 3)));
    }

    #[test]
    fn snaps_to_nearby_fraction() {
        // |333/1000 - 1/3| = 1/3000 < 1/200
        assert_eq!(continued_fraction_round(&rat(333, 1000), &Int::from(10)), Some(rat(1, 3)));
        // |2/5 - 1/2| = 1/10 < 1/8
        assert_eq!(continued_fraction_round(&rat(2, 5), &Int::from(2)), Some(rat(1, 2)));
    }

    #[test]
    fn absent_when_no_fraction_qualifies() {
        // 1/2 + 1/7 = 9/14: for K=3, nearest p/q with q<=3 is off by >= 1/18 > ...
        let alpha = rat(9, 14);
        let got = continued_fraction_round(&alpha, &Int::from(3));
        assert_eq!(got, brute_force_round(&alpha, 3));
    }

    #[test]
    fn matches_brute_force_widely() {
        for num in 0..240i64 {
            for den in [7, 99, 240, 1009] {
                let alpha = rat(num * 13 + 1, den);
                for k in [1i64, 2, 5, 17, 50, 100] {
                    let fast = continued_fraction_round(&alpha, &Int::from(k));
                    let slow = brute_force_round(&alpha, k);
                    assert_eq!(fast, slow, "alpha={alpha} K={k}");
                }
            }
        }
    }

    #[test]
    fn negative_arguments() {
        let alpha = rat(-333, 1000);
        assert_eq!(continued_fraction_round(&alpha, &Int::from(10)), Some(rat(-1, 3)));
    }
}
