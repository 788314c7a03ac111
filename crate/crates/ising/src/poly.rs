//! The partition function as a polynomial in the external field, and its
//! zeros at high precision.
//!
//! Zeros are found by Durand-Kerner iteration on fixed-precision rational
//! complex numbers (256 bits by default) seeded from a spread of points, and
//! each returned root carries its certified-small residual |p(root)|.

use crate::graph::Graph;
use crate::tree::RootedTree;
use crate::IsingError;
use leeyang_exact::interval::sqrt_approx;
use leeyang_exact::{Int, Rat};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Exact coefficients c_0..c_n of Z_G(z, b) as a polynomial in z.
pub fn partition_polynomial_in_lambda(g: &Graph, b: &Rat) -> Result<Vec<Rat>, IsingError> {
    let cap = crate::partition::DEFAULT_CAP;
    if g.n > cap {
        return Err(IsingError::TooLarge(g.n, cap));
    }
    // histogram over (plus count, disagreement)
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    let edges = &g.edges;
    let n = g.n;
    let mut spins = vec![false; n];
    let mut delta = 0u32;
    let mut plus = 0u32;
    *counts.entry((0, 0)).or_insert(0) += 1;
    let mut inc: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for &(a, bb, m) in edges {
        inc[a].push((bb, m));
        inc[bb].push((a, m));
    }
    for k in 1u64..(1 << n) {
        let i = k.trailing_zeros() as usize;
        let old = spins[i];
        spins[i] = !old;
        for &(j, m) in &inc[i] {
            if spins[j] == old {
                delta += m;
            } else {
                delta -= m;
            }
        }
        if spins[i] {
            plus += 1;
        } else {
            plus -= 1;
        }
        *counts.entry((plus, delta)).or_insert(0) += 1;
    }
    let mut b_pow = vec![Rat::one()];
    let max_d: u32 = edges.iter().map(|e| e.2).sum();
    for _ in 0..max_d {
        b_pow.push(b_pow.last().unwrap() * b);
    }
    let mut coeffs = vec![Rat::zero(); n + 1];
    for (&(j, d), &c) in &counts {
        coeffs[j as usize] += &b_pow[d as usize] * Rat::from_integer(Int::from(c));
    }
    Ok(coeffs)
}

/// Polynomial coefficients for a rooted tree of any size, by convolving the
/// (Z+, Z-) coefficient pairs bottom-up.
pub fn tree_polynomial_in_lambda(t: &RootedTree, b: &Rat) -> Vec<Rat> {
    fn conv(a: &[Rat], c: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); a.len() + c.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in c.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    fn go(t: &RootedTree, v: usize, b: &Rat) -> (Vec<Rat>, Vec<Rat>) {
        // z_plus = z * prod(child_p + b child_m), z_minus = prod(b child_p + child_m)
        let mut p = vec![Rat::zero(), Rat::one()]; // the factor z
        let mut m = vec![Rat::one()];
        let at = |v: &[Rat], i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
        for &c in &t.children[v] {
            let (cp, cm) = go(t, c, b);
            let len = cp.len().max(cm.len());
            let sum_p: Vec<Rat> = (0..len).map(|i| at(&cp, i) + at(&cm, i) * b).collect();
            let sum_m: Vec<Rat> = (0..len).map(|i| at(&cp, i) * b + at(&cm, i)).collect();
            p = conv(&p, &sum_p);
            m = conv(&m, &sum_m);
        }
        (p, m)
    }
    let (p, m) = go(t, t.root, b);
    let len = p.len().max(m.len());
    (0..len)
        .map(|i| {
            let a = p.get(i).cloned().unwrap_or_else(Rat::zero);
            let c = m.get(i).cloned().unwrap_or_else(Rat::zero);
            a + c
        })
        .collect()
}

/// A numeric root with its certified residual and modulus.
#[derive(Clone, Debug)]
pub struct PolyRoot {
    pub re: Rat,
    pub im: Rat,
    pub residual: Rat,
    pub modulus: Rat,
}

const ROOT_PREC: u32 = 256;

#[derive(Clone)]
struct C {
    re: Rat,
    im: Rat,
}

impl C {
    fn round(&self, prec: u32) -> C {
        let r = |q: &Rat| {
            let s = q * Rat::from_integer(Int::one() << prec);
            Rat::new(s.round().to_integer(), Int::one() << prec)
        };
        C { re: r(&self.re), im: r(&self.im) }
    }
    fn add(&self, o: &C) -> C {
        C { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &C) -> C {
        C { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &C) -> C {
        C {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn div(&self, o: &C) -> C {
        let n = &o.re * &o.re + &o.im * &o.im;
        C {
            re: (&self.re * &o.re + &self.im * &o.im) / &n,
            im: (&self.im * &o.re - &self.re * &o.im) / &n,
        }
    }
    fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn eval(coeffs: &[C], z: &C) -> C {
    let mut acc = C { re: Rat::zero(), im: Rat::zero() };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c).round(ROOT_PREC + 32);
    }
    acc
}

/// All roots of the exact-coefficient polynomial, with residuals <= tol.
pub fn polynomial_zeros(coeffs: &[Rat], tol: &Rat) -> Result<Vec<PolyRoot>, IsingError> {
    // strip trailing zero coefficients and leading zero roots
    let mut cs: Vec<Rat> = coeffs.to_vec();
    while cs.last().map(|c| c.is_zero()).unwrap_or(false) {
        cs.pop();
    }
    if cs.len() <= 1 {
        return Ok(Vec::new());
    }
    let deg = cs.len() - 1;
    // normalize to monic
    let lead = cs.last().unwrap().clone();
    let monic: Vec<C> = cs
        .iter()
        .map(|c| C { re: c / &lead, im: Rat::zero() })
        .collect();
    // Durand-Kerner from a spread of seeds
    let seed = C { re: leeyang_exact::rat(2, 5), im: leeyang_exact::rat(9, 10) };
    let mut roots: Vec<C> = Vec::with_capacity(deg);
    let mut cur = seed.clone();
    for _ in 0..deg {
        roots.push(cur.clone());
        cur = cur.mul(&seed).round(ROOT_PREC);
    }
    let eps = Rat::new(Int::one(), Int::one() << (ROOT_PREC - 40));
    let max_iter = 400;
    for _ in 0..max_iter {
        let mut moved = Rat::zero();
        for i in 0..deg {
            let zi = roots[i].clone();
            let num = eval(&monic, &zi);
            let mut den = C { re: Rat::one(), im: Rat::zero() };
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    den = den.mul(&zi.sub(zj)).round(ROOT_PREC + 32);
                }
            }
            if den.norm_sqr().is_zero() {
                // perturb coincident estimates
                roots[i] = zi.add(&C { re: leeyang_exact::rat(1, 997), im: leeyang_exact::rat(1, 499) });
                moved = Rat::one();
                continue;
            }
            let delta = num.div(&den).round(ROOT_PREC);
            roots[i] = zi.sub(&delta).round(ROOT_PREC);
            let d2 = delta.norm_sqr();
            if d2 > moved {
                moved = d2;
            }
        }
        if moved < &eps * &eps {
            break;
        }
    }
    // residual certification on the original (non-monic) polynomial
    let orig: Vec<C> = cs.iter().map(|c| C { re: c.clone(), im: Rat::zero() }).collect();
    let mut out = Vec::with_capacity(deg);
    for r in roots {
        let val = eval(&orig, &r);
        let residual = sqrt_approx(&val.norm_sqr(), 30);
        if &residual > tol {
            return Err(IsingError::NoConvergence);
        }
        let modulus = sqrt_approx(&r.norm_sqr(), 60);
        out.push(PolyRoot { re: r.re, im: r.im, residual, modulus });
    }
    Ok(out)
}

/// Convenience: the zeros of Z_G(., b).
pub fn lee_yang_zeros(g: &Graph, b: &Rat, tol: &Rat) -> Result<Vec<PolyRoot>, IsingError> {
    let coeffs = partition_polynomial_in_lambda(g, b)?;
    polynomial_zeros(&coeffs, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use leeyang_exact::rat;
    use num_traits::Signed;

    #[test]
    fn single_vertex_root_minus_one() {
        let g = Graph::new(1);
        let coeffs = partition_polynomial_in_lambda(&g, &rat(1, 2)).unwrap();
        assert_eq!(coeffs, vec![rat(1, 1), rat(1, 1)]);
        let roots = polynomial_zeros(&coeffs, &rat(1, 1_000_000)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].re.clone() + rat(1, 1)).abs() < rat(1, 1000));
    }

    #[test]
    fn k2_coefficients_and_circle_roots() {
        let b = rat(1, 2);
        let coeffs = partition_polynomial_in_lambda(&Graph::k2(), &b).unwrap();
        // 1 + 2b z + z^2
        assert_eq!(coeffs, vec![rat(1, 1), rat(1, 1), rat(1, 1)]);
        let roots = polynomial_zeros(&coeffs, &rat(1, 1_000_000)).unwrap();
        for r in roots {
            assert!((r.modulus - rat(1, 1)).abs() < rat(1, 100_000));
        }
    }

    #[test]
    fn star_roots_on_circle() {
        let g = Graph::star(3);
        let roots = lee_yang_zeros(&g, &rat(1, 2), &rat(1, 1_000_000)).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            let err = (r.modulus - rat(1, 1)).abs();
            assert!(err < rat(1, 10_000_000_000), "modulus error {}", err);
        }
    }

    #[test]
    fn tree_polynomial_matches_bruteforce() {
        let t = crate::tree::RootedTree::star(3);
        let g = t.to_graph();
        let b = rat(2, 5);
        let a = tree_polynomial_in_lambda(&t, &b);
        let c = partition_polynomial_in_lambda(&g, &b).unwrap();
        assert_eq!(a, c);
    }
}
