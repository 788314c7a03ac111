//! Rooted trees and the bottom-up two-state recursion.

use crate::graph::Graph;
use crate::IsingError;
use leeyang_exact::{ExactError, GaussianRational, Rat, UnitPoint};
use serde::{Deserialize, Serialize};

/// A rooted tree stored as children lists. Node 0..n; per-node activity
/// overrides mirror the graph convention (weight of + at that node).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootedTree {
    pub children: Vec<Vec<usize>>,
    pub root: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub field_overrides: Vec<(usize, GaussianRational)>,
    /// Optional cached pair for one (lambda, b); checked against
    /// recomputation by `verify_cache`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<TreeCache>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeCache {
    pub lambda: GaussianRational,
    #[serde(with = "leeyang_exact::parse::serde_rat")]
    pub b: Rat,
    pub z_plus: GaussianRational,
    pub z_minus: GaussianRational,
}

impl RootedTree {
    pub fn single_vertex() -> Self {
        RootedTree { children: vec![vec![]], root: 0, field_overrides: Vec::new(), cache: None }
    }

    /// A path with n vertices rooted at one end.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        let children = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![] }).collect();
        RootedTree { children, root: 0, field_overrides: Vec::new(), cache: None }
    }

    /// A star: root with `k` leaves.
    pub fn star(k: usize) -> Self {
        let mut children = vec![(1..=k).collect::<Vec<_>>()];
        children.extend(std::iter::repeat(vec![]).take(k));
        RootedTree { children, root: 0, field_overrides: Vec::new(), cache: None }
    }

    pub fn n(&self) -> usize {
        self.children.len()
    }

    pub fn root_degree(&self) -> usize {
        self.children[self.root].len()
    }

    /// Degree in the underlying undirected tree.
    pub fn degree(&self, v: usize) -> usize {
        let parent = if v == self.root { 0 } else { 1 };
        self.children[v].len() + parent
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Checks membership in T_{d+1}: max degree <= d+1 and root degree <= d.
    pub fn respects_caps(&self, d: usize) -> bool {
        self.max_degree() <= d + 1 && self.root_degree() <= d
    }

    fn override_at(&self, v: usize) -> Option<&GaussianRational> {
        self.field_overrides.iter().find(|(u, _)| *u == v).map(|(_, f)| f)
    }

    /// (Z_{T,+r}, Z_{T,-r}) by one post-order pass.
    pub fn partition_pair(
        &self,
        lambda: &GaussianRational,
        b: &Rat,
    ) -> (GaussianRational, GaussianRational) {
        // iterative post-order
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in &self.children[v] {
                stack.push(c);
            }
        }
        let mut zp: Vec<Option<GaussianRational>> = vec![None; n];
        let mut zm: Vec<Option<GaussianRational>> = vec![None; n];
        for &v in order.iter().rev() {
            let act = self.override_at(v).cloned().unwrap_or_else(|| lambda.clone());
            let mut p = act;
            let mut m = GaussianRational::one();
            for &c in &self.children[v] {
                let (cp, cm) = (zp[c].as_ref().unwrap(), zm[c].as_ref().unwrap());
                // edge (v, c): weight b on disagreement
                p = &p * &(cp + &cm.scale(b));
                m = &m * &(&cp.scale(b) + cm);
            }
            zp[v] = Some(p);
            zm[v] = Some(m);
        }
        (zp[self.root].take().unwrap(), zm[self.root].take().unwrap())
    }

    /// The field Z_+/Z_-; errors when Z_- = 0 (a Lee-Yang-zero-adjacent event).
    pub fn field(&self, lambda: &GaussianRational, b: &Rat) -> Result<GaussianRational, IsingError> {
        let (p, m) = self.partition_pair(lambda, b);
        if m.is_zero() {
            return Err(IsingError::ZeroDenominator);
        }
        Ok(&p / &m)
    }

    /// The field as a checked unit point (valid for lambda on the circle, real b).
    pub fn field_on_circle(&self, lambda: &GaussianRational, b: &Rat) -> Result<UnitPoint, IsingError> {
        let f = self.field(lambda, b)?;
        UnitPoint::new(f).map_err(|e: ExactError| IsingError::NotATree(e.to_string()))
    }

    pub fn compute_and_cache(&mut self, lambda: &GaussianRational, b: &Rat) {
        let (p, m) = self.partition_pair(lambda, b);
        self.cache = Some(TreeCache {
            lambda: lambda.clone(),
            b: b.clone(),
            z_plus: p,
            z_minus: m,
        });
    }

    pub fn verify_cache(&self) -> bool {
        match &self.cache {
            None => true,
            Some(c) => {
                let (p, m) = self.partition_pair(&c.lambda, &c.b);
                p == c.z_plus && m == c.z_minus
            }
        }
    }

    /// Underlying undirected graph (pins/fields copied over).
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for v in 0..self.n() {
            for &c in &self.children[v] {
                g.add_edge(v, c);
            }
        }
        for (v, f) in &self.field_overrides {
            g.set_field(*v, f.clone());
        }
        g
    }

    /// DOT export with optional per-node (Z+, Z-) annotations.
    pub fn to_dot(&self, annot: Option<(&GaussianRational, &Rat)>) -> String {
        let mut labels: Vec<String> = (0..self.n()).map(|v| format!("{v}")).collect();
        if let Some((lambda, b)) = annot {
            // recompute pairs for every node by rooting the recursion there
            // lazily: reuse partition_pair bookkeeping
            let n = self.n();
            let mut order = Vec::with_capacity(n);
            let mut stack = vec![self.root];
            while let Some(v) = stack.pop() {
                order.push(v);
                for &c in &self.children[v] {
                    stack.push(c);
                }
            }
            let mut zp: Vec<Option<GaussianRational>> = vec![None; n];
            let mut zm: Vec<Option<GaussianRational>> = vec![None; n];
            for &v in order.iter().rev() {
                let act = self.override_at(v).cloned().unwrap_or_else(|| lambda.clone());
                let mut p = act;
                let mut m = GaussianRational::one();
                for &c in &self.children[v] {
                    let (cp, cm) = (zp[c].as_ref().unwrap(), zm[c].as_ref().unwrap());
                    p = &p * &(cp + &cm.scale(b));
                    m = &m * &(&cp.scale(b) + cm);
                }
                labels[v] = format!("{v}\\nZ+={p}\\nZ-={m}", p = p, m = m);
                zp[v] = Some(p);
                zm[v] = Some(m);
            }
        }
        let mut out = String::from("digraph tree {\n");
        for (v, l) in labels.iter().enumerate() {
            let shape = if v == self.root { ", shape=box" } else { "" };
            out.push_str(&format!("  n{v} [label=\"{l}\"{shape}];\n"));
        }
        for v in 0..self.n() {
            for &c in &self.children[v] {
                out.push_str(&format!("  n{v} -> n{c};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Uniform random tree on n nodes (random parent attachment), rooted at 0.
    pub fn random(n: usize, rng: &mut impl FnMut(usize) -> usize) -> Self {
        assert!(n >= 1);
        let mut children = vec![Vec::new(); n];
        for v in 1..n {
            let p = rng(v);
            children[p].push(v);
        }
        RootedTree { children, root: 0, field_overrides: Vec::new(), cache: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{pinned_partition, partition_reference};
    use crate::Spin;
    use leeyang_exact::rat;

    fn i() -> GaussianRational {
        GaussianRational::i()
    }

    #[test]
    fn single_vertex_pair() {
        let t = RootedTree::single_vertex();
        let (p, m) = t.partition_pair(&i(), &rat(1, 2));
        assert_eq!(p, i());
        assert_eq!(m, GaussianRational::one());
    }

    #[test]
    fn two_vertex_path_field() {
        // field = lambda (lambda + b) / (b lambda + 1)
        let t = RootedTree::path(2);
        let lam = i();
        let b = rat(1, 3);
        let f = t.field(&lam, &b).unwrap();
        let expect = &(&lam * &(&lam + &GaussianRational::from_re(b.clone())))
            / &(&lam.scale(&b) + &GaussianRational::one());
        assert_eq!(f, expect);
    }

    #[test]
    fn star_field_is_map_value() {
        // star with k leaves: field = lambda * ((lambda + b)/(b lambda + 1))^k
        let k = 4;
        let t = RootedTree::star(k);
        let lam = GaussianRational::new(rat(3, 5), rat(4, 5));
        let b = rat(2, 5);
        let f = t.field(&lam, &b).unwrap();
        let unit = &(&lam + &GaussianRational::from_re(b.clone()))
            / &(&lam.scale(&b) + &GaussianRational::one());
        let expect = &lam * &unit.pow(k as i64).unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn recursion_matches_pinned_brute_force() {
        let mut seed = 12345u64;
        let mut rng = move |m: usize| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize % m
        };
        for n in [2usize, 5, 10] {
            let t = RootedTree::random(n, &mut rng);
            let g = t.to_graph();
            let lam = i();
            let b = rat(2, 5);
            let (p, m) = t.partition_pair(&lam, &b);
            let bp = pinned_partition(&g, &[(t.root, Spin::Plus)], &lam, &b).unwrap();
            let bm = pinned_partition(&g, &[(t.root, Spin::Minus)], &lam, &b).unwrap();
            assert_eq!(p, bp);
            assert_eq!(m, bm);
            assert_eq!(&p + &m, partition_reference(&g, &lam, &b));
        }
    }

    #[test]
    fn field_has_unit_modulus() {
        let t = RootedTree::star(3);
        let f = t.field_on_circle(&i(), &rat(1, 4)).unwrap();
        assert!(f.value().norm_sqr() == rat(1, 1));
    }

    #[test]
    fn cache_roundtrip() {
        let mut t = RootedTree::path(4);
        t.compute_and_cache(&i(), &rat(1, 2));
        assert!(t.verify_cache());
    }

    #[test]
    fn dot_export_contains_annotations() {
        let t = RootedTree::path(2);
        let dot = t.to_dot(Some((&i(), &rat(1, 2))));
        assert!(dot.contains("Z+="));
        assert!(dot.contains("n0 -> n1"));
    }
}
