//! Path transfer matrices and the effective edge interaction b_k.

use leeyang_exact::{Rat, rat_int};
use num_traits::One;

/// Entries of [[1, b], [b, 1]]^(k-1) and the ratio b_k = offdiag/diag.
#[derive(Clone, Debug, PartialEq)]
pub struct PathTransfer {
    pub diag: Rat,
    pub offdiag: Rat,
    pub b_k: Rat,
}

/// Exact transfer data of the k-vertex path with unit activities.
pub fn path_transfer(k: usize, b: &Rat) -> PathTransfer {
    assert!(k >= 2);
    // [[1,b],[b,1]]^(k-1) has diag ((1+b)^(k-1)+(1-b)^(k-1))/2 and
    // offdiag ((1+b)^(k-1)-(1-b)^(k-1))/2; verify by direct power.
    let mut m = [Rat::one(), b.clone(), b.clone(), Rat::one()];
    let base = m.clone();
    for _ in 0..k.saturating_sub(2) {
        m = [
            &m[0] * &base[0] + &m[1] * &base[2],
            &m[0] * &base[1] + &m[1] * &base[3],
            &m[2] * &base[0] + &m[3] * &base[2],
            &m[2] * &base[1] + &m[3] * &base[3],
        ];
    }
    debug_assert_eq!(m[1], m[2]);
    debug_assert_eq!(m[0], m[3]);
    let two = rat_int(2);
    let s = Rat::one() + b;
    let d = Rat::one() - b;
    let pow = |x: &Rat| {
        let mut acc = Rat::one();
        for _ in 0..k - 1 {
            acc *= x;
        }
        acc
    };
    let closed_diag = (pow(&s) + pow(&d)) / &two;
    let closed_off = (pow(&s) - pow(&d)) / &two;
    debug_assert_eq!(closed_diag, m[0]);
    debug_assert_eq!(closed_off, m[1]);
    let b_k = &m[1] / &m[0];
    PathTransfer { diag: m[0].clone(), offdiag: m[1].clone(), b_k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::partition::two_vertex_weights;
    use leeyang_exact::{rat, GaussianRational};

    #[test]
    fn k2_is_plain_edge() {
        let t = path_transfer(2, &rat(1, 2));
        assert_eq!(t.diag, rat(1, 1));
        assert_eq!(t.offdiag, rat(1, 2));
        assert_eq!(t.b_k, rat(1, 2));
    }

    #[test]
    fn k3_value() {
        let t = path_transfer(3, &rat(1, 2));
        assert_eq!(t.b_k, rat(4, 5));
    }

    #[test]
    fn b5_at_half() {
        let t = path_transfer(5, &rat(1, 2));
        assert_eq!(t.b_k, rat(40, 41));
    }

    #[test]
    fn matches_pinned_partition_of_path() {
        // transfer entries equal the endpoint-pinned partition values at lambda = 1
        for k in [2usize, 3, 5, 8] {
            let b = rat(2, 7);
            let t = path_transfer(k, &b);
            let g = Graph::path(k);
            let one = GaussianRational::one();
            let w = two_vertex_weights(&g, 0, k - 1, &one, &b).unwrap();
            assert_eq!(w.z_pp, GaussianRational::from_re(t.diag.clone()));
            assert_eq!(w.z_pm, GaussianRational::from_re(t.offdiag.clone()));
            assert_eq!(w.z_mp, w.z_pm);
            assert_eq!(w.z_mm, w.z_pp);
        }
    }

    #[test]
    fn monotone_increasing_to_one() {
        for b in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            let mut last = rat(0, 1);
            for k in 2..=50usize {
                let t = path_transfer(k, &b);
                assert!(t.b_k > last, "b_k not increasing at k={k}");
                assert!(t.b_k < rat(1, 1));
                // lower bound 1 - (1-b)^(k-1) <= b_k, strict from k = 3 on
                // (at k = 2 both sides equal b)
                let mut low = rat(1, 1);
                for _ in 0..k - 1 {
                    low *= rat(1, 1) - b.clone();
                }
                if k == 2 {
                    assert_eq!(rat(1, 1) - low, t.b_k);
                } else {
                    assert!(rat(1, 1) - low < t.b_k);
                }
                last = t.b_k;
            }
        }
    }
}
