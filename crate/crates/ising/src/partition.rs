//! Exact partition functions by configuration enumeration.
//!
//! The enumeration walks spin configurations in Gray-code order keeping the
//! disagreement count incrementally, and buckets configurations by
//! (#plus among plain vertices, #disagreeing edge units, spins of the
//! overridden vertices). The final value is a short exact sum over buckets,
//! so the 2^n loop touches no big integers at all.

use crate::graph::{Graph, Spin};
use crate::IsingError;
use leeyang_exact::{GaussianRational, Rat};
use num_traits::One;
use std::collections::HashMap;

pub const DEFAULT_CAP: usize = 24;

/// The four two-vertex-pinned partition values z_{++}, z_{+-}, z_{-+}, z_{--}.
#[derive(Clone, Debug, PartialEq)]
pub struct PinnedWeights {
    pub z_pp: GaussianRational,
    pub z_pm: GaussianRational,
    pub z_mp: GaussianRational,
    pub z_mm: GaussianRational,
}

/// Z_G(lambda, b) honoring pins and field overrides; exact.
pub fn partition(g: &Graph, lambda: &GaussianRational, b: &Rat) -> Result<GaussianRational, IsingError> {
    partition_capped(g, lambda, b, DEFAULT_CAP)
}

pub fn partition_capped(
    g: &Graph,
    lambda: &GaussianRational,
    b: &Rat,
    cap: usize,
) -> Result<GaussianRational, IsingError> {
    let free: Vec<usize> = (0..g.n).filter(|v| !g.pins.contains_key(v)).collect();
    if free.len() > cap {
        return Err(IsingError::TooLarge(free.len(), cap));
    }
    let hist = histogram(g, &free);
    Ok(evaluate(g, &free, &hist, lambda, b))
}

/// Z with explicit extra pins layered on top of the graph's own pins.
pub fn pinned_partition(
    g: &Graph,
    pins: &[(usize, Spin)],
    lambda: &GaussianRational,
    b: &Rat,
) -> Result<GaussianRational, IsingError> {
    let mut g2 = g.clone();
    for &(v, s) in pins {
        g2.pin(v, s);
    }
    partition(&g2, lambda, b)
}

/// All four (u, v)-pinned values in one pass each.
pub fn two_vertex_weights(
    g: &Graph,
    u: usize,
    v: usize,
    lambda: &GaussianRational,
    b: &Rat,
) -> Result<PinnedWeights, IsingError> {
    use Spin::*;
    Ok(PinnedWeights {
        z_pp: pinned_partition(g, &[(u, Plus), (v, Plus)], lambda, b)?,
        z_pm: pinned_partition(g, &[(u, Plus), (v, Minus)], lambda, b)?,
        z_mp: pinned_partition(g, &[(u, Minus), (v, Plus)], lambda, b)?,
        z_mm: pinned_partition(g, &[(u, Minus), (v, Minus)], lambda, b)?,
    })
}

/// Buckets: (plain_plus_count, disagreement, override_spin_bits) -> count.
fn histogram(g: &Graph, free: &[usize]) -> HashMap<(u32, u32, u64), u64> {
    let nf = free.len();
    let mut pos = vec![usize::MAX; g.n];
    for (i, &v) in free.iter().enumerate() {
        pos[v] = i;
    }
    // override vertices among the free ones, assigned bit slots
    let mut ov_slot = vec![usize::MAX; g.n];
    let mut n_ov = 0usize;
    for (&v, _) in &g.fields {
        if pos[v] != usize::MAX {
            ov_slot[v] = n_ov;
            n_ov += 1;
        }
    }
    assert!(n_ov <= 64, "too many field overrides");
    // per free vertex: incident edges as (other_free_index or !0, fixed_spin_if_pinned, mult)
    #[derive(Clone)]
    enum Inc {
        Free(usize, u32),
        Pinned(Spin, u32),
    }
    let mut inc: Vec<Vec<Inc>> = vec![Vec::new(); nf];
    let mut base_delta = 0u32; // disagreement among pinned-pinned edges
    for &(a, bb, m) in &g.edges {
        match (pos[a], pos[bb]) {
            (usize::MAX, usize::MAX) => {
                if g.pins[&a] != g.pins[&bb] {
                    base_delta += m;
                }
            }
            (ia, usize::MAX) => inc[ia].push(Inc::Pinned(g.pins[&bb], m)),
            (usize::MAX, ib) => inc[ib].push(Inc::Pinned(g.pins[&a], m)),
            (ia, ib) => {
                inc[ia].push(Inc::Free(ib, m));
                inc[ib].push(Inc::Free(ia, m));
            }
        }
    }

    // Gray-code walk over the free spins; spins[i] true = Plus. Start all Minus.
    let mut spins = vec![false; nf];
    let mut delta = base_delta;
    for i in 0..nf {
        for e in &inc[i] {
            if let Inc::Pinned(Spin::Plus, m) = e {
                delta += m; // free Minus vs pinned Plus disagree
            }
        }
    }
    let mut ov_bits = 0u64;
    let mut hist: HashMap<(u32, u32, u64), u64> = HashMap::new();
    let total = 1u64 << nf;

    // which free indices are overridden
    let ov_of: Vec<Option<usize>> = free.iter().map(|&v| {
        if ov_slot[v] != usize::MAX { Some(ov_slot[v]) } else { None }
    }).collect();

    let mut plain_plus_count = 0u32;
    *hist.entry((plain_plus_count, delta, ov_bits)).or_insert(0) += 1;
    for k in 1..total {
        // Gray code: flip bit = trailing zeros of k
        let i = k.trailing_zeros() as usize;
        let old = spins[i];
        spins[i] = !old;
        let new = spins[i];
        // update disagreement over incident edges
        for e in &inc[i] {
            match e {
                Inc::Free(j, m) => {
                    if spins[*j] == old {
                        delta += m;
                    } else {
                        delta -= m;
                    }
                }
                Inc::Pinned(s, m) => {
                    let was_disagree = (*s == Spin::Plus) != old;
                    if was_disagree {
                        delta -= m;
                    } else {
                        delta += m;
                    }
                }
            }
        }
        match ov_of[i] {
            Some(slot) => {
                if new {
                    ov_bits |= 1 << slot;
                } else {
                    ov_bits &= !(1 << slot);
                }
            }
            None => {
                if new {
                    plain_plus_count += 1;
                } else {
                    plain_plus_count -= 1;
                }
            }
        }
        *hist.entry((plain_plus_count, delta, ov_bits)).or_insert(0) += 1;
    }
    hist
}

fn evaluate(
    g: &Graph,
    free: &[usize],
    hist: &HashMap<(u32, u32, u64), u64>,
    lambda: &GaussianRational,
    b: &Rat,
) -> GaussianRational {
    // constant prefactor from pinned vertices
    let mut prefactor = GaussianRational::one();
    for (&v, &s) in &g.pins {
        if s == Spin::Plus {
            let w = g.fields.get(&v).cloned().unwrap_or_else(|| lambda.clone());
            prefactor = &prefactor * &w;
        }
    }
    // power tables
    let max_j = free.len() as u32;
    let max_d: u32 = g.edges.iter().map(|e| e.2).sum();
    let mut lam_pow = Vec::with_capacity(max_j as usize + 1);
    lam_pow.push(GaussianRational::one());
    for _ in 0..max_j {
        let next = &lam_pow.last().unwrap().clone() * lambda;
        lam_pow.push(next);
    }
    let mut b_pow = Vec::with_capacity(max_d as usize + 1);
    b_pow.push(Rat::one());
    for _ in 0..max_d {
        let next = b_pow.last().unwrap() * b;
        b_pow.push(next);
    }
    // override products per pattern
    let ov_vertices: Vec<usize> = {
        let mut pos = vec![usize::MAX; g.n];
        for (i, &v) in free.iter().enumerate() {
            pos[v] = i;
        }
        g.fields.keys().copied().filter(|v| pos[*v] != usize::MAX).collect()
    };
    let mut pattern_cache: HashMap<u64, GaussianRational> = HashMap::new();
    let mut acc = GaussianRational::zero();
    for (&(j, d, bits), &count) in hist {
        let ov = pattern_cache.entry(bits).or_insert_with(|| {
            let mut p = GaussianRational::one();
            for (slot, &v) in ov_vertices.iter().enumerate() {
                if bits >> slot & 1 == 1 {
                    p = &p * &g.fields[&v];
                }
            }
            p
        });
        let term = lam_pow[j as usize]
            .scale(&(&b_pow[d as usize] * Rat::from_integer(count.into())));
        acc = &acc + &(&term * &*ov);
    }
    &acc * &prefactor
}

/// Direct per-configuration reference implementation, used as an oracle in
/// tests. Exponential in n with big arithmetic per configuration.
pub fn partition_reference(g: &Graph, lambda: &GaussianRational, b: &Rat) -> GaussianRational {
    let free: Vec<usize> = (0..g.n).filter(|v| !g.pins.contains_key(v)).collect();
    let mut acc = GaussianRational::zero();
    for mask in 0u64..(1 << free.len()) {
        let spin = |v: usize| -> Spin {
            if let Some(&s) = g.pins.get(&v) {
                return s;
            }
            let i = free.iter().position(|&x| x == v).unwrap();
            if mask >> i & 1 == 1 {
                Spin::Plus
            } else {
                Spin::Minus
            }
        };
        let mut w = GaussianRational::one();
        for v in 0..g.n {
            if spin(v) == Spin::Plus {
                let f = g.fields.get(&v).cloned().unwrap_or_else(|| lambda.clone());
                w = &w * &f;
            }
        }
        let mut d = 0u32;
        for &(a, bb, m) in &g.edges {
            if spin(a) != spin(bb) {
                d += m;
            }
        }
        let mut bb = Rat::one();
        for _ in 0..d {
            bb *= b;
        }
        acc = &acc + &w.scale(&bb);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use leeyang_exact::{rat, rat_int};

    fn i() -> GaussianRational {
        GaussianRational::i()
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1);
        let z = partition(&g, &i(), &rat(1, 2)).unwrap();
        assert_eq!(z, &GaussianRational::one() + &i());
    }

    #[test]
    fn isolated_vertices_factorize() {
        let g = Graph::new(5);
        let z = partition(&g, &i(), &rat(1, 3)).unwrap();
        let one_plus = &GaussianRational::one() + &i();
        assert_eq!(z, one_plus.pow(5).unwrap());
    }

    #[test]
    fn k2_at_i_half() {
        // Z = lambda^2 + 2 b lambda + 1 = i^2 + i + 1 = i at b = 1/2
        let z = partition(&Graph::k2(), &i(), &rat(1, 2)).unwrap();
        assert_eq!(z, i());
    }

    #[test]
    fn pins_and_sum_rule() {
        let g = Graph::cycle(5);
        let lam = GaussianRational::new(rat(3, 5), rat(4, 5));
        let b = rat(2, 7);
        let z = partition(&g, &lam, &b).unwrap();
        let zp = pinned_partition(&g, &[(2, Spin::Plus)], &lam, &b).unwrap();
        let zm = pinned_partition(&g, &[(2, Spin::Minus)], &lam, &b).unwrap();
        assert_eq!(z, &zp + &zm);
    }

    #[test]
    fn all_pinned_single_term() {
        let mut g = Graph::k2();
        g.pin(0, Spin::Plus);
        g.pin(1, Spin::Minus);
        let z = partition(&g, &i(), &rat(1, 2)).unwrap();
        assert_eq!(z, i().scale(&rat(1, 2)));
    }

    #[test]
    fn matches_reference_with_overrides() {
        let mut g = Graph::cycle(4);
        g.add_edge(0, 2);
        g.set_field(1, GaussianRational::new(rat(-3, 5), rat(4, 5)));
        g.pin(3, Spin::Plus);
        let lam = GaussianRational::new(rat(5, 13), rat(12, 13));
        let b = rat(3, 4);
        assert_eq!(
            partition(&g, &lam, &b).unwrap(),
            partition_reference(&g, &lam, &b)
        );
    }

    #[test]
    fn k2_pinned_weights() {
        let b = rat(1, 2);
        let w = two_vertex_weights(&Graph::k2(), 0, 1, &i(), &b).unwrap();
        assert_eq!(w.z_pp, i().pow(2).unwrap());
        assert_eq!(w.z_pm, i().scale(&b));
        assert_eq!(w.z_mm, GaussianRational::one());
        let _ = rat_int(1);
    }
}
