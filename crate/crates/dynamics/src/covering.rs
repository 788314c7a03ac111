//! Contracting maps that cover: the pull-back engine on [0, 1].
//!
//! Maps are exact rational self-maps of the interval with derivative in
//! (0, 1). The engine follows the constructive proof: pull the target back
//! through whichever image contains it; once it escapes every image, seize a
//! map endpoint and finish with iterates of the endpoint-fixing map. The
//! returned index sequence is certified post hoc by exact evaluation.

use crate::DynamicsError;
use leeyang_exact::{rat_int, Rat};
use num_traits::{One, Signed, Zero};

/// x -> slope * x + offset with 0 < slope < 1, mapping [0,1] into itself.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub slope: Rat,
    pub offset: Rat,
}

impl LinearMap {
    pub fn new(slope: Rat, offset: Rat) -> Result<Self, DynamicsError> {
        if !(slope.is_positive() && slope < Rat::one()) {
            return Err(DynamicsError::PreconditionViolated(
                "slope must lie in (0,1)".into(),
            ));
        }
        if offset.is_negative() || &slope + &offset > Rat::one() {
            return Err(DynamicsError::PreconditionViolated(
                "map must send [0,1] into itself".into(),
            ));
        }
        Ok(LinearMap { slope, offset })
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.offset
    }

    /// Image of [0,1]: [offset, slope + offset].
    pub fn image(&self) -> (Rat, Rat) {
        (self.offset.clone(), &self.slope + &self.offset)
    }

    pub fn preimage_point(&self, y: &Rat) -> Rat {
        (y - &self.offset) / &self.slope
    }
}

/// Open interval (lo, hi) in [0,1].
#[derive(Clone, Debug, PartialEq)]
pub struct OpenInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl OpenInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, DynamicsError> {
        if lo >= hi {
            return Err(DynamicsError::PreconditionViolated("empty interval".into()));
        }
        Ok(OpenInterval { lo, hi })
    }
}

/// Verifies that the images of the maps cover [0,1].
fn check_covering(maps: &[LinearMap]) -> Result<(), DynamicsError> {
    let mut images: Vec<(Rat, Rat)> = maps.iter().map(|m| m.image()).collect();
    images.sort_by(|a, b| a.0.cmp(&b.0));
    let mut reach = Rat::zero();
    for (lo, hi) in images {
        if lo > reach {
            return Err(DynamicsError::CoverViolated(format!(
                "gap before {lo}: images reach only {reach}"
            )));
        }
        if hi > reach {
            reach = hi;
        }
    }
    if reach < Rat::one() {
        return Err(DynamicsError::CoverViolated(format!(
            "images reach only {reach} < 1"
        )));
    }
    Ok(())
}

/// Returns indices m_1..m_N such that (f_{m_1} o ... o f_{m_N})([0,1]) lies
/// inside the open interval J, certified by exact endpoint evaluation.
pub fn cover_and_contract(
    maps: &[LinearMap],
    j: &OpenInterval,
    budget: usize,
) -> Result<Vec<usize>, DynamicsError> {
    if maps.is_empty() {
        return Err(DynamicsError::PreconditionViolated("no maps given".into()));
    }
    check_covering(maps)?;
    // trivial case: J contains the whole open interval
    if j.lo < Rat::zero() || j.lo.is_zero() {
        if j.hi > Rat::one() || j.hi.is_one() {
            return Ok(Vec::new());
        }
    }
    let mut seq: Vec<usize> = Vec::new();
    let mut cur = j.clone();
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > budget {
            return Err(DynamicsError::BudgetExceeded(format!(
                "pull-back did not escape within {budget} steps; current length {}",
                &cur.hi - &cur.lo
            )));
        }
        // containment in some image?
        let inside = maps.iter().position(|m| {
            let (lo, hi) = m.image();
            lo <= cur.lo && cur.hi <= hi
        });
        match inside {
            Some(m) => {
                cur = OpenInterval {
                    lo: maps[m].preimage_point(&cur.lo),
                    hi: maps[m].preimage_point(&cur.hi),
                };
                seq.push(m);
            }
            None => break,
        }
    }
    // cur contains an endpoint of some image strictly inside
    let mut tail: Option<Vec<usize>> = None;
    for (m, map) in maps.iter().enumerate() {
        let (lo, hi) = map.image();
        let lo_inside = cur.lo < lo && lo < cur.hi;
        let hi_inside = cur.lo < hi && hi < cur.hi;
        if lo_inside {
            // f_m([0, a]) lands in cur for small a; finish with the 0-fixing map
            if let Some(zero_fix) = maps.iter().position(|f| f.offset.is_zero()) {
                let mut t = vec![m];
                // iterate: need f_zero^N(1) = slope^N small enough that
                // f_m(slope^N) < cur.hi
                let mut y = Rat::one();
                let mut n = 0usize;
                loop {
                    y = &y * &maps[zero_fix].slope;
                    n += 1;
                    if map.eval(&y) < cur.hi {
                        break;
                    }
                    if n > budget {
                        return Err(DynamicsError::BudgetExceeded(
                            "endpoint contraction exceeded budget".into(),
                        ));
                    }
                }
                t.extend(std::iter::repeat(zero_fix).take(n));
                tail = Some(t);
                break;
            }
        }
        if hi_inside {
            if let Some(one_fix) = maps
                .iter()
                .position(|f| (&f.slope + &f.offset).is_one())
            {
                let mut t = vec![m];
                let mut y = Rat::zero();
                let mut n = 0usize;
                loop {
                    y = maps[one_fix].eval(&y);
                    n += 1;
                    if map.eval(&y) > cur.lo {
                        break;
                    }
                    if n > budget {
                        return Err(DynamicsError::BudgetExceeded(
                            "endpoint contraction exceeded budget".into(),
                        ));
                    }
                }
                t.extend(std::iter::repeat(one_fix).take(n));
                tail = Some(t);
                break;
            }
        }
    }
    let tail = tail.ok_or_else(|| {
        DynamicsError::NoConvergence(
            "no image endpoint inside the escaped interval; covering degenerate".into(),
        )
    })?;
    seq.extend(tail);
    // post-hoc certification by exact evaluation
    let (a, b) = apply_sequence(maps, &seq);
    if !(j.lo < a && a <= b && b < j.hi) {
        return Err(DynamicsError::NoConvergence(format!(
            "certification failed: image [{a}, {b}] not inside ({}, {})",
            j.lo, j.hi
        )));
    }
    Ok(seq)
}

/// Image of [0,1] under f_{m_1} o ... o f_{m_N}, exactly.
pub fn apply_sequence(maps: &[LinearMap], seq: &[usize]) -> (Rat, Rat) {
    let mut lo = Rat::zero();
    let mut hi = Rat::one();
    for &m in seq.iter().rev() {
        lo = maps[m].eval(&lo);
        hi = maps[m].eval(&hi);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use leeyang_exact::rat;

    fn alpha_maps(alpha: Rat) -> Vec<LinearMap> {
        vec![
            LinearMap::new(alpha.clone(), rat(0, 1)).unwrap(),
            LinearMap::new(alpha.clone(), Rat::one() - alpha).unwrap(),
        ]
    }

    #[test]
    fn lands_inside_target() {
        let maps = alpha_maps(rat(3, 5));
        let j = OpenInterval::new(rat(42, 100), rat(44, 100)).unwrap();
        let seq = cover_and_contract(&maps, &j, 10_000).unwrap();
        let (a, b) = apply_sequence(&maps, &seq);
        assert!(j.lo < a && b < j.hi, "image [{a},{b}]");
    }

    #[test]
    fn whole_interval_is_trivial() {
        let maps = alpha_maps(rat(3, 5));
        let j = OpenInterval::new(rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(cover_and_contract(&maps, &j, 100).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn covering_violation_detected() {
        // alpha = 0.4: images [0, .4] and [.6, 1] miss (.4, .6)
        let maps = alpha_maps(rat(2, 5));
        let j = OpenInterval::new(rat(1, 2), rat(51, 100)).unwrap();
        let r = cover_and_contract(&maps, &j, 100);
        assert!(matches!(r, Err(DynamicsError::CoverViolated(_))));
    }

    #[test]
    fn tiny_targets_work() {
        let maps = alpha_maps(rat(13, 20));
        for (lo, hi) in [(rat(1, 10), rat(101, 1000)), (rat(899, 1000), rat(9, 10))] {
            let j = OpenInterval::new(lo, hi).unwrap();
            let seq = cover_and_contract(&maps, &j, 100_000).unwrap();
            let (a, b) = apply_sequence(&maps, &seq);
            assert!(j.lo < a && b < j.hi);
        }
    }

    #[test]
    fn three_maps_cover() {
        let maps = vec![
            LinearMap::new(rat(2, 5), rat(0, 1)).unwrap(),
            LinearMap::new(rat(2, 5), rat(3, 10)).unwrap(),
            LinearMap::new(rat(2, 5), rat(3, 5)).unwrap(),
        ];
        let j = OpenInterval::new(rat(1, 2), rat(52, 100)).unwrap();
        let seq = cover_and_contract(&maps, &j, 100_000).unwrap();
        let (a, b) = apply_sequence(&maps, &seq);
        assert!(j.lo < a && b < j.hi);
    }
}
