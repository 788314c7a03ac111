//! The Cantor-style near-arithmetic-progression construction.
//!
//! For alpha in [1/3, 1) and the pair phi_0(x) = alpha x,
//! phi_1(x) = alpha x + (1 - alpha), produce binary words w1, w2, w3 such
//! that every triple p_i in phi_{w_i}([0,1]) is nearly an arithmetic
//! progression: |(p2-p1)/(p3-p2) - 1| < eps. For alpha >= 1/2 the three
//! intervals are pinned near 0, 1/2, 1; below 1/2 the refinement keeps the
//! invariant q1 + q3 = 2 q2 alive while the intervals shrink.

use crate::covering::{cover_and_contract, LinearMap, OpenInterval};
use crate::DynamicsError;
use leeyang_exact::{rat, rat_int, Rat};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// A finite binary word; concatenation via `concat`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryWord(pub Vec<u8>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinaryWord(v)
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.0.push(bit);
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Exact image phi_w([0,1]) = [phi_w(0), phi_w(1)] for the linear pair.
pub fn word_interval(w: &BinaryWord, alpha: &Rat) -> (Rat, Rat) {
    // compose outermost-first: phi_w = phi_{w_1} o ... o phi_{w_n}
    let mut lo = Rat::zero();
    let mut hi = Rat::one();
    for &bit in w.0.iter().rev() {
        let off = if bit == 0 { Rat::zero() } else { Rat::one() - alpha };
        lo = alpha * &lo + &off;
        hi = alpha * &hi + &off;
    }
    (lo, hi)
}

/// Evaluate the near-AP ratio bound over all 8 endpoint combinations,
/// exactly. Requires the intervals ordered with I3 strictly above I2.
pub fn check_triple(
    words: &[BinaryWord; 3],
    alpha: &Rat,
    eps: &Rat,
) -> Result<bool, DynamicsError> {
    let i1 = word_interval(&words[0], alpha);
    let i2 = word_interval(&words[1], alpha);
    let i3 = word_interval(&words[2], alpha);
    if i3.0 <= i2.1 {
        return Ok(false); // p3 - p2 not sign-definite
    }
    for p1 in [&i1.0, &i1.1] {
        for p2 in [&i2.0, &i2.1] {
            for p3 in [&i3.0, &i3.1] {
                let num = p2 - p1;
                let den = p3 - p2;
                if den.is_zero() {
                    return Ok(false);
                }
                if (&num / &den - Rat::one()).abs() >= *eps {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// One refinement level and the rational triple witnessing q1 + q3 = 2 q2.
#[derive(Clone, Debug, Serialize)]
pub struct RefinementLevel {
    pub words: [BinaryWord; 3],
    pub q: [String; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct NearApResult {
    pub words: [BinaryWord; 3],
    /// For alpha < 1/2, the refinement trace (each level keeps q1+q3 = 2q2).
    pub levels: Vec<RefinementLevel>,
}

pub fn near_ap_triple(
    alpha: &Rat,
    eps: &Rat,
    max_level: usize,
) -> Result<NearApResult, DynamicsError> {
    if alpha < &rat(1, 3) {
        return Err(DynamicsError::PreconditionViolated(format!(
            "alpha = {alpha} below 1/3"
        )));
    }
    if alpha >= &Rat::one() || !eps.is_positive() {
        return Err(DynamicsError::PreconditionViolated(
            "need alpha in [1/3,1) and eps > 0".into(),
        ));
    }
    if alpha >= &rat(1, 2) {
        near_ap_pinning(alpha, eps, max_level)
    } else {
        near_ap_refinement(alpha, eps, max_level)
    }
}

/// alpha >= 1/2: the images cover [0,1]; pin intervals near 0, 1/2, 1.
fn near_ap_pinning(
    alpha: &Rat,
    eps: &Rat,
    max_level: usize,
) -> Result<NearApResult, DynamicsError> {
    let delta = eps / rat_int(24);
    // w1 = 0^j, w3 = 1^j with alpha^j <= delta
    let mut pw = Rat::one();
    let mut j = 0usize;
    while pw > delta {
        pw *= alpha;
        j += 1;
        if j > 4096 {
            return Err(DynamicsError::BudgetExceeded("pinning depth".into()));
        }
    }
    let w1 = BinaryWord(vec![0; j]);
    let w3 = BinaryWord(vec![1; j]);
    // w2: pull the middle window back through the covering pair
    let maps = vec![
        LinearMap::new(alpha.clone(), Rat::zero())?,
        LinearMap::new(alpha.clone(), Rat::one() - alpha)?,
    ];
    let window = OpenInterval::new(rat(1, 2) - &delta, rat(1, 2) + &delta)?;
    let seq = cover_and_contract(&maps, &window, max_level.max(4096))?;
    let w2 = BinaryWord(seq.iter().map(|&m| m as u8).collect());
    let words = [w1, w2, w3];
    if !check_triple(&words, alpha, eps)? {
        return Err(DynamicsError::NoConvergence(
            "pinned triple missed the bound; decrease delta".into(),
        ));
    }
    Ok(NearApResult { words, levels: Vec::new() })
}

/// alpha in [1/3, 1/2): refinement from w1=(0,0), w2=(0,1), w3=(1,0)
/// preserving q1 + q3 = 2 q2.
fn near_ap_refinement(
    alpha: &Rat,
    eps: &Rat,
    max_level: usize,
) -> Result<NearApResult, DynamicsError> {
    let mut words = [
        BinaryWord(vec![0, 0]),
        BinaryWord(vec![0, 1]),
        BinaryWord(vec![1, 0]),
    ];
    // starting triple: q1 = 0, q2 = (1-alpha)/2, q3 = 1-alpha
    let mut q = [Rat::zero(), (Rat::one() - alpha) / rat_int(2), Rat::one() - alpha];
    let mut levels = vec![RefinementLevel {
        words: words.clone(),
        q: [q[0].to_string(), q[1].to_string(), q[2].to_string()],
    }];
    for _ in 0..max_level {
        // invariant check
        debug_assert_eq!(&q[0] + &q[2], rat_int(2) * &q[1]);
        for (i, w) in words.iter().enumerate() {
            let iv = word_interval(w, alpha);
            debug_assert!(iv.0 <= q[i] && q[i] <= iv.1, "q{i} escaped its interval");
        }
        if check_triple(&words, alpha, eps)? {
            return Ok(NearApResult { words, levels });
        }
        // refine: children intervals I_i^k; choose k2 with 2 I2^{k2}
        // intersecting I1 + I3, then (k1, k3) intersecting 2 I2^{k2}.
        let child = |w: &BinaryWord, k: u8| {
            let mut c = w.clone();
            c.push(k);
            c
        };
        let iv = |w: &BinaryWord| word_interval(w, alpha);
        let sum = |a: &(Rat, Rat), b: &(Rat, Rat)| (&a.0 + &b.0, &a.1 + &b.1);
        let intersect = |a: &(Rat, Rat), b: &(Rat, Rat)| -> Option<(Rat, Rat)> {
            let lo = a.0.clone().max(b.0.clone());
            let hi = a.1.clone().min(b.1.clone());
            if lo <= hi {
                Some((lo, hi))
            } else {
                None
            }
        };
        let mut placed = false;
        'outer: for k2 in 0..=1u8 {
            let w2c = child(&words[1], k2);
            let two_i2 = {
                let v = iv(&w2c);
                (rat_int(2) * &v.0, rat_int(2) * &v.1)
            };
            for (k1, k3) in [(0u8, 0u8), (1, 0), (0, 1), (1, 1)] {
                let w1c = child(&words[0], k1);
                let w3c = child(&words[2], k3);
                let s = sum(&iv(&w1c), &iv(&w3c));
                if let Some((lo, hi)) = intersect(&s, &two_i2) {
                    // choose s0 in the intersection, split into q1 + q3
                    let s0 = (&lo + &hi) / rat_int(2);
                    let i1 = iv(&w1c);
                    let i3 = iv(&w3c);
                    let q1_lo = i1.0.clone().max(&s0 - &i3.1);
                    let q1_hi = i1.1.clone().min(&s0 - &i3.0);
                    debug_assert!(q1_lo <= q1_hi);
                    let q1 = (&q1_lo + &q1_hi) / rat_int(2);
                    let q3 = &s0 - &q1;
                    let q2 = &s0 / rat_int(2);
                    words = [w1c, w2c, w3c];
                    q = [q1, q2, q3];
                    levels.push(RefinementLevel {
                        words: words.clone(),
                        q: [q[0].to_string(), q[1].to_string(), q[2].to_string()],
                    });
                    placed = true;
                    break 'outer;
                }
            }
        }
        if !placed {
            return Err(DynamicsError::NoConvergence(
                "no child combination preserves the progression".into(),
            ));
        }
    }
    Err(DynamicsError::BudgetExceeded(format!(
        "near-AP refinement did not reach eps within {max_level} levels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_half_pins_three_intervals() {
        let r = near_ap_triple(&rat(1, 2), &rat(1, 2), 4096).unwrap();
        let i1 = word_interval(&r.words[0], &rat(1, 2));
        let i2 = word_interval(&r.words[1], &rat(1, 2));
        let i3 = word_interval(&r.words[2], &rat(1, 2));
        assert!(i1.1 <= rat(1, 10));
        assert!(i2.0 >= rat(2, 5) && i2.1 <= rat(3, 5));
        assert!(i3.0 >= rat(9, 10));
        assert!(check_triple(&r.words, &rat(1, 2), &rat(1, 2)).unwrap());
    }

    #[test]
    fn figure_alpha_7_16_refinement() {
        let alpha = rat(7, 16);
        let r = near_ap_triple(&alpha, &rat(1, 10), 64).unwrap();
        assert!(check_triple(&r.words, &alpha, &rat(1, 10)).unwrap());
        // every level keeps words of equal length and the midpoint invariant
        for (lvl, level) in r.levels.iter().enumerate() {
            let n = level.words[0].len();
            assert_eq!(level.words[1].len(), n);
            assert_eq!(level.words[2].len(), n);
            assert_eq!(n, lvl + 2, "one refinement per level");
            let q: Vec<Rat> = level
                .q
                .iter()
                .map(|s| leeyang_exact::parse::parse_rat(s).unwrap())
                .collect();
            assert_eq!(&q[0] + &q[2], rat_int(2) * &q[1]);
        }
        assert!(r.levels.len() >= 2);
    }

    #[test]
    fn alpha_below_third_rejected() {
        let r = near_ap_triple(&rat(1, 4), &rat(1, 10), 64);
        assert!(matches!(r, Err(DynamicsError::PreconditionViolated(_))));
    }

    #[test]
    fn tight_eps_still_passes() {
        for alpha in [rat(1, 3), rat(2, 5), rat(19, 40)] {
            let eps = rat(1, 100);
            let r = near_ap_triple(&alpha, &eps, 256).unwrap();
            assert!(check_triple(&r.words, &alpha, &eps).unwrap(), "alpha = {alpha}");
        }
    }
}
