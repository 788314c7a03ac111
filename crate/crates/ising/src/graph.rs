//! Simple/multigraphs with optional per-vertex spin pins and field overrides.

use crate::IsingError;
use leeyang_exact::GaussianRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Spin {
    pub fn flip(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }
}

/// Vertices are 0..n. Edges carry a multiplicity so the lambda = -1 parallel
/// bundles can live here too; everything else uses multiplicity 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    /// (u, v, multiplicity), u != v
    pub edges: Vec<(usize, usize, u32)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pins: BTreeMap<usize, Spin>,
    /// Per-vertex activity override: the weight of spin + at that vertex
    /// (replacing lambda); the weight of spin - stays 1.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fields: BTreeMap<usize, GaussianRational>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new(), pins: BTreeMap::new(), fields: BTreeMap::new() }
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.add_edge_mult(u, v, 1);
    }

    pub fn add_edge_mult(&mut self, u: usize, v: usize, mult: u32) {
        assert!(u != v, "self-loops are not supported");
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        for e in &mut self.edges {
            if e.0 == a && e.1 == b {
                e.2 += mult;
                return;
            }
        }
        self.edges.push((a, b, mult));
    }

    /// Adds a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn pin(&mut self, v: usize, s: Spin) {
        assert!(v < self.n);
        self.pins.insert(v, s);
    }

    pub fn set_field(&mut self, v: usize, f: GaussianRational) {
        assert!(v < self.n);
        self.fields.insert(v, f);
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(|e| e.2 as usize).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, m)| if a == v || b == v { m as usize } else { 0 })
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn validate_max_degree(&self, cap: usize) -> Result<(), IsingError> {
        for v in 0..self.n {
            if self.degree(v) > cap {
                return Err(IsingError::NotATree(format!(
                    "vertex {v} has degree {} > {cap}",
                    self.degree(v)
                )));
            }
        }
        Ok(())
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.2 == 1)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b, _) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Graph with one edge unit between u and v removed (multiplicity aware).
    pub fn delete_edge(&self, u: usize, v: usize) -> Graph {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            if e.0 == a && e.1 == b {
                e.2 -= 1;
                break;
            }
        }
        g.edges.retain(|e| e.2 > 0);
        g
    }

    /// Subdivide one copy of the edge {u, v}: remove it, add vertex s and
    /// edges {u, s}, {s, v}. Returns (graph, s).
    pub fn subdivide_edge(&self, u: usize, v: usize) -> (Graph, usize) {
        let mut g = self.delete_edge(u, v);
        let s = g.add_vertex();
        g.add_edge(u, s);
        g.add_edge(s, v);
        (g, s)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b, m) in &self.edges {
            if a == v {
                for _ in 0..m {
                    out.push(b);
                }
            } else if b == v {
                for _ in 0..m {
                    out.push(a);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Graph, serde_json::Error> {
        serde_json::from_str(s)
    }

    // small named instances used throughout the tests
    pub fn k2() -> Graph {
        Graph::with_edges(2, &[(0, 1)])
    }

    pub fn path(n: usize) -> Graph {
        Graph::with_edges(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::with_edges(n, &e)
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::with_edges(n, &e)
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::with_edges(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let mut g = Graph::with_edges(3, &[(0, 1), (1, 2)]);
        g.pin(0, Spin::Plus);
        g.set_field(2, GaussianRational::i());
        let j = g.to_json();
        let back = Graph::from_json(&j).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn degree_counts_multiplicity() {
        let mut g = Graph::new(2);
        g.add_edge_mult(0, 1, 3);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.num_edges(), 3);
        let d = g.delete_edge(0, 1);
        assert_eq!(d.degree(0), 2);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::cycle(5).is_connected());
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        assert!(!g.is_connected());
    }
}
