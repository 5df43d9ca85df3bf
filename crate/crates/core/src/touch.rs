//! Touch graph of a locally irreducible embedding: one node per antiface and
//! one edge per digraph vertex, a loop for a vertex on a single antiface and
//! a link for a vertex on two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::digraph::{Dsu, VertexId};
use crate::embedding::Embedding;
use crate::interlace::InterlaceError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TouchGraph {
    nodes: usize,
    /// Indexed by digraph vertex: `(a, a)` for a loop, `(a, b)` with `a < b` for a link.
    edges: Vec<(usize, usize)>,
}

/// Summary used by the reducer's case dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub loop_nodes: Vec<usize>,
    pub star_center: Option<usize>,
    /// Pair `(A, B)`, `A < B`, maximizing `|AB|`, and that count.
    pub argmax_pair: Option<(usize, usize, usize)>,
}

impl TouchGraph {
    pub fn build(e: &Embedding) -> Result<Self, InterlaceError> {
        let mut edges = Vec::with_capacity(e.digraph().vertex_count());
        for (vertex, faces) in e.antifaces_at().into_iter().enumerate() {
            match faces[..] {
                [a] => edges.push((a, a)),
                [a, b] => edges.push((a, b)),
                _ => return Err(InterlaceError::NotLocallyIrreducible { vertex, count: faces.len() }),
            }
        }
        Ok(TouchGraph { nodes: e.antiface_count(), edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, v: VertexId) -> (usize, usize) {
        self.edges[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops_at(&self, a: usize) -> usize {
        self.edges.iter().filter(|&&(p, q)| p == a && q == a).count()
    }

    pub fn loop_nodes(&self) -> Vec<usize> {
        (0..self.nodes).filter(|&a| self.loops_at(a) > 0).collect()
    }

    /// Nodes joined to `a` by a link.
    pub fn neighbors(&self, a: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(p, q)| match (p == a, q == a) {
                (true, false) => Some(q),
                (false, true) => Some(p),
                _ => None,
            })
            .collect()
    }

    /// Lowest node incident with every edge.
    pub fn star_center(&self) -> Option<usize> {
        (0..self.nodes).find(|&a| self.edges.iter().all(|&(p, q)| p == a || q == a))
    }

    pub fn is_star(&self) -> bool {
        self.star_center().is_some()
    }

    /// Parallel edges collapsed, with multiplicities.
    pub fn weighted(&self) -> BTreeMap<(usize, usize), usize> {
        let mut w = BTreeMap::new();
        for &e in &self.edges {
            *w.entry(e).or_insert(0) += 1;
        }
        w
    }

    pub fn argmax_pair(&self) -> Option<(usize, usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for ((a, b), w) in self.weighted() {
            if a != b && best.is_none_or(|(_, _, bw)| w > bw) {
                best = Some((a, b, w));
            }
        }
        best
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.nodes);
        for &(a, b) in &self.edges {
            dsu.union(a, b);
        }
        dsu.component_count() == 1
    }

    pub fn classify(&self) -> Classification {
        Classification {
            loop_nodes: self.loop_nodes(),
            star_center: self.star_center(),
            argmax_pair: self.argmax_pair(),
        }
    }

    /// Weighted touch graph in DOT, edges labelled by multiplicity.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph touch {\n");
        for a in 0..self.nodes {
            let _ = writeln!(out, "  A{a};");
        }
        for ((a, b), w) in self.weighted() {
            let _ = writeln!(out, "  A{a} -- A{b} [label=\"{w}\"];");
        }
        out.push_str("}\n");
        out
    }
}
