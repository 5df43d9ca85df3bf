//! Half-arc digraphs, directed circuits and circuit decompositions.
//!
//! Arc `i` owns two half-arcs: the outgoing half-arc `2i` at its tail and the
//! incoming half-arc `2i + 1` at its head, so the mate involution is `h ^ 1`.
//! Loops and parallel arcs are allowed everywhere.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type ArcId = usize;
pub type EdgeId = usize;

/// One end of an arc.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfArc(pub usize);

impl HalfArc {
    pub fn outgoing(arc: ArcId) -> Self {
        HalfArc(2 * arc)
    }

    pub fn incoming(arc: ArcId) -> Self {
        HalfArc(2 * arc + 1)
    }

    pub fn arc(self) -> ArcId {
        self.0 / 2
    }

    pub fn is_outgoing(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn is_incoming(self) -> bool {
        !self.is_outgoing()
    }

    pub fn mate(self) -> Self {
        HalfArc(self.0 ^ 1)
    }
}

impl fmt::Display for HalfArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = if self.is_outgoing() { '+' } else { '-' };
        write!(f, "{}{}", self.arc(), dir)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("a digraph needs at least one vertex")]
    NoVertices,
    #[error("the digraph has no arcs")]
    NoArcs,
    #[error("arc {arc} uses vertex {vertex}, but there are only {n} vertices")]
    VertexOutOfRange { arc: ArcId, vertex: VertexId, n: usize },
    #[error("edge {edge} uses vertex {vertex}, but there are only {n} vertices")]
    EdgeVertexOutOfRange { edge: EdgeId, vertex: VertexId, n: usize },
    #[error("vertex {vertex} is unbalanced: indegree {indegree}, outdegree {outdegree}")]
    Unbalanced { vertex: VertexId, indegree: usize, outdegree: usize },
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: VertexId, degree: usize },
    #[error("the digraph is not connected")]
    Disconnected,
    #[error("circuit {index} is invalid: {reason}")]
    InvalidCircuit { index: usize, reason: String },
    #[error("not a circuit decomposition: {0}")]
    NotADecomposition(String),
}

/// Balance and connectivity summary produced alongside a [`Digraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub unbalanced: Vec<(VertexId, usize, usize)>,
    pub connected: bool,
}

impl ValidationReport {
    pub fn is_eulerian(&self) -> bool {
        self.unbalanced.is_empty() && self.connected
    }
}

/// A finite digraph in the half-arc model. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    out_at: Vec<Vec<HalfArc>>,
    in_at: Vec<Vec<HalfArc>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        let mut out_at = vec![Vec::new(); n];
        let mut in_at = vec![Vec::new(); n];
        for (i, &(t, h)) in arcs.iter().enumerate() {
            for v in [t, h] {
                if v >= n {
                    return Err(DigraphError::VertexOutOfRange { arc: i, vertex: v, n });
                }
            }
            out_at[t].push(HalfArc::outgoing(i));
            in_at[h].push(HalfArc::incoming(i));
        }
        Ok(Digraph { n, arcs, out_at, in_at })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn tail(&self, arc: ArcId) -> VertexId {
        self.arcs[arc].0
    }

    pub fn head(&self, arc: ArcId) -> VertexId {
        self.arcs[arc].1
    }

    pub fn is_loop(&self, arc: ArcId) -> bool {
        self.arcs[arc].0 == self.arcs[arc].1
    }

    /// The vertex a half-arc is incident with.
    pub fn incv(&self, h: HalfArc) -> VertexId {
        if h.is_outgoing() {
            self.tail(h.arc())
        } else {
            self.head(h.arc())
        }
    }

    pub fn half_arc_count(&self) -> usize {
        2 * self.arcs.len()
    }

    /// Outgoing half-arcs at `v`, ascending.
    pub fn out_half_arcs(&self, v: VertexId) -> &[HalfArc] {
        &self.out_at[v]
    }

    /// Incoming half-arcs at `v`, ascending.
    pub fn in_half_arcs(&self, v: VertexId) -> &[HalfArc] {
        &self.in_at[v]
    }

    pub fn indegree(&self, v: VertexId) -> usize {
        self.in_at[v].len()
    }

    pub fn outdegree(&self, v: VertexId) -> usize {
        self.out_at[v].len()
    }

    pub fn unbalanced_vertices(&self) -> Vec<(VertexId, usize, usize)> {
        (0..self.n)
            .filter(|&v| self.indegree(v) != self.outdegree(v))
            .map(|v| (v, self.indegree(v), self.outdegree(v)))
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.n).all(|v| self.indegree(v) == self.outdegree(v))
    }

    pub fn check_balanced(&self) -> Result<(), DigraphError> {
        match self.unbalanced_vertices().first() {
            None => Ok(()),
            Some(&(vertex, indegree, outdegree)) => Err(DigraphError::Unbalanced { vertex, indegree, outdegree }),
        }
    }

    /// Weak connectivity over all `n` vertices; an isolated vertex counts as
    /// its own component, a loop-only vertex is a connected singleton.
    pub fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.n);
        for &(t, h) in &self.arcs {
            dsu.union(t, h);
        }
        dsu.component_count() == 1
    }

    pub fn validation(&self) -> ValidationReport {
        ValidationReport { unbalanced: self.unbalanced_vertices(), connected: self.is_connected() }
    }

    pub fn is_eulerian(&self) -> bool {
        !self.arcs.is_empty() && self.validation().is_eulerian()
    }

    pub fn check_eulerian(&self) -> Result<(), DigraphError> {
        if self.arcs.is_empty() {
            return Err(DigraphError::NoArcs);
        }
        self.check_balanced()?;
        if !self.is_connected() {
            return Err(DigraphError::Disconnected);
        }
        Ok(())
    }

    /// Undirected simple graph on the same vertices: `u ~ v` iff `u != v` and
    /// some arc joins them in either direction.
    pub fn underlying_simple_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for &(t, h) in &self.arcs {
            if t != h {
                g.add_edge(t, h);
            }
        }
        g
    }

    pub fn density_profile(&self) -> DensityProfile {
        DensityProfile::new(self.n, self.underlying_simple_graph().min_degree())
    }
}

/// Density bookkeeping for the underlying simple graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityProfile {
    pub n: usize,
    pub delta: usize,
    /// Co-degree bound `n - 1 - delta`: the most non-neighbours any vertex has.
    pub k: usize,
    pub dense: bool,
}

impl DensityProfile {
    pub fn new(n: usize, delta: usize) -> Self {
        assert!(n >= 1 && delta < n, "minimum degree {delta} impossible on {n} vertices");
        let k = n - 1 - delta;
        let by_degree = 5 * delta >= 4 * n + 2;
        let by_codegree = n >= 5 * k + 7;
        assert_eq!(by_degree, by_codegree, "density forms disagree for n={n}, delta={delta}");
        DensityProfile { n, delta, k, dense: by_degree }
    }
}

/// Simple undirected graph with sorted adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<VertexId>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `uv`; loops are ignored and parallel edges collapse.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.adj.len());
        for (u, v) in self.edges() {
            dsu.union(u, v);
        }
        dsu.component_count() <= 1
    }
}

/// A closed directed trail, stored as its arc sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedCircuit {
    arcs: Vec<ArcId>,
}

impl DirectedCircuit {
    pub fn new(d: &Digraph, arcs: Vec<ArcId>) -> Result<Self, String> {
        if arcs.is_empty() {
            return Err("circuit is empty".into());
        }
        let mut seen = BTreeSet::new();
        for &a in &arcs {
            if a >= d.arc_count() {
                return Err(format!("arc {a} does not exist"));
            }
            if !seen.insert(a) {
                return Err(format!("arc {a} repeated"));
            }
        }
        for (i, &a) in arcs.iter().enumerate() {
            let next = arcs[(i + 1) % arcs.len()];
            if d.head(a) != d.tail(next) {
                return Err(format!("arc {a} ends at {} but arc {next} starts at {}", d.head(a), d.tail(next)));
            }
        }
        Ok(DirectedCircuit { arcs })
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Vertices visited, one per arc (the tail of each arc).
    pub fn vertex_sequence(&self, d: &Digraph) -> Vec<VertexId> {
        self.arcs.iter().map(|&a| d.tail(a)).collect()
    }

    pub fn vertex_set(&self, d: &Digraph) -> BTreeSet<VertexId> {
        self.arcs.iter().map(|&a| d.tail(a)).collect()
    }

    /// Cyclic shift starting at the lowest arc id.
    pub fn canonical(&self) -> Vec<ArcId> {
        canonical_rotation(&self.arcs)
    }
}

/// Rotates a sequence of distinct ids so that it starts with its minimum.
pub(crate) fn canonical_rotation(arcs: &[ArcId]) -> Vec<ArcId> {
    let Some(start) = arcs.iter().enumerate().min_by_key(|&(_, a)| *a).map(|(i, _)| i) else {
        return Vec::new();
    };
    arcs[start..].iter().chain(&arcs[..start]).copied().collect()
}

/// A partition of the arc set into directed circuits, with the induced
/// successor map `fw` from incoming to outgoing half-arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitDecomposition {
    circuits: Vec<DirectedCircuit>,
    fw: Vec<HalfArc>,
}

impl CircuitDecomposition {
    pub fn new(d: &Digraph, circuits: Vec<Vec<ArcId>>) -> Result<Self, DigraphError> {
        let m = d.arc_count();
        let mut fw = vec![HalfArc(usize::MAX); m];
        let mut built = Vec::with_capacity(circuits.len());
        for (index, arcs) in circuits.into_iter().enumerate() {
            let c = DirectedCircuit::new(d, arcs).map_err(|reason| DigraphError::InvalidCircuit { index, reason })?;
            for (i, &a) in c.arcs.iter().enumerate() {
                if fw[a].0 != usize::MAX {
                    return Err(DigraphError::NotADecomposition(format!("arc {a} is used by more than one circuit")));
                }
                fw[a] = HalfArc::outgoing(c.arcs[(i + 1) % c.arcs.len()]);
            }
            built.push(c);
        }
        if let Some(a) = fw.iter().position(|h| h.0 == usize::MAX) {
            return Err(DigraphError::NotADecomposition(format!("arc {a} is not covered")));
        }
        Ok(CircuitDecomposition { circuits: built, fw })
    }

    /// Builds the decomposition induced by a transition system: `succ[a]` is the
    /// arc following arc `a`. Circuits are listed by their lowest arc.
    pub fn from_successors(d: &Digraph, succ: &[ArcId]) -> Result<Self, DigraphError> {
        if succ.len() != d.arc_count() {
            return Err(DigraphError::NotADecomposition("successor table has the wrong length".into()));
        }
        let mut seen = vec![false; succ.len()];
        let mut circuits = Vec::new();
        for start in 0..succ.len() {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                c.push(a);
                a = succ[a];
                if a >= succ.len() {
                    return Err(DigraphError::NotADecomposition(format!("successor {a} out of range")));
                }
            }
            if a != start {
                return Err(DigraphError::NotADecomposition("successor table is not a permutation".into()));
            }
            circuits.push(c);
        }
        CircuitDecomposition::new(d, circuits)
    }

    pub fn circuits(&self) -> &[DirectedCircuit] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// The outgoing half-arc that follows incoming half-arc `h` in its circuit.
    pub fn fw(&self, h: HalfArc) -> HalfArc {
        debug_assert!(h.is_incoming());
        self.fw[h.arc()]
    }

    /// Circuits as arc-id lists.
    pub fn to_arc_lists(&self) -> Vec<Vec<ArcId>> {
        self.circuits.iter().map(|c| c.arcs.clone()).collect()
    }

    /// Canonical circuit set, sorted, for comparisons.
    pub fn canonical_set(&self) -> Vec<Vec<ArcId>> {
        let mut v: Vec<_> = self.circuits.iter().map(DirectedCircuit::canonical).collect();
        v.sort();
        v
    }
}

/// Hierholzer's algorithm restricted to the arcs with `allowed[a]`, starting
/// at `start`, always taking the lowest unused outgoing half-arc.
fn hierholzer(d: &Digraph, allowed: &[bool], start: VertexId) -> Vec<ArcId> {
    let mut next = vec![0usize; d.vertex_count()];
    let mut stack: Vec<(VertexId, Option<ArcId>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let outs = d.out_half_arcs(v);
        while next[v] < outs.len() && !allowed[outs[next[v]].arc()] {
            next[v] += 1;
        }
        if next[v] < outs.len() {
            let a = outs[next[v]].arc();
            next[v] += 1;
            stack.push((d.head(a), Some(a)));
        } else {
            let (_, a) = stack.pop().expect("stack is nonempty");
            if let Some(a) = a {
                circuit.push(a);
            }
        }
    }
    circuit.reverse();
    circuit
}

/// A directed euler circuit of a connected balanced digraph, starting at the
/// lowest vertex and always following the lowest unused outgoing half-arc.
pub fn euler_circuit(d: &Digraph) -> Result<DirectedCircuit, DigraphError> {
    d.check_eulerian()?;
    let start = (0..d.vertex_count()).find(|&v| d.outdegree(v) > 0).expect("an eulerian digraph has arcs");
    let arcs = hierholzer(d, &vec![true; d.arc_count()], start);
    debug_assert_eq!(arcs.len(), d.arc_count());
    DirectedCircuit::new(d, arcs).map_err(|reason| DigraphError::InvalidCircuit { index: 0, reason })
}

/// Euler circuits of each weakly connected component of the arc subset
/// `allowed`, ordered by their lowest arc. The subset must be balanced.
pub fn euler_circuits_of_subgraph(d: &Digraph, allowed: &[bool]) -> Result<Vec<DirectedCircuit>, DigraphError> {
    let mut indeg = vec![0usize; d.vertex_count()];
    let mut outdeg = vec![0usize; d.vertex_count()];
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        if allowed[a] {
            outdeg[t] += 1;
            indeg[h] += 1;
        }
    }
    if let Some(v) = (0..d.vertex_count()).find(|&v| indeg[v] != outdeg[v]) {
        return Err(DigraphError::Unbalanced { vertex: v, indegree: indeg[v], outdegree: outdeg[v] });
    }
    let mut remaining = allowed.to_vec();
    let mut out = Vec::new();
    while let Some(a0) = remaining.iter().position(|&x| x) {
        let arcs = hierholzer(d, &remaining, d.tail(a0));
        for &a in &arcs {
            remaining[a] = false;
        }
        let c = DirectedCircuit::new(d, arcs)
            .map_err(|reason| DigraphError::InvalidCircuit { index: out.len(), reason })?;
        out.push(c);
    }
    Ok(out)
}

/// Circuit decomposition by repeated peeling: start from the lowest unused arc
/// and follow the lowest unused outgoing arc until returning to the start.
pub fn greedy_circuit_decomposition(d: &Digraph) -> Result<CircuitDecomposition, DigraphError> {
    d.check_balanced()?;
    let m = d.arc_count();
    let mut used = vec![false; m];
    let mut next = vec![0usize; d.vertex_count()];
    let mut circuits = Vec::new();
    for a0 in 0..m {
        if used[a0] {
            continue;
        }
        used[a0] = true;
        let start = d.tail(a0);
        let mut c = vec![a0];
        let mut v = d.head(a0);
        while v != start {
            let outs = d.out_half_arcs(v);
            while used[outs[next[v]].arc()] {
                next[v] += 1;
            }
            let a = outs[next[v]].arc();
            used[a] = true;
            c.push(a);
            v = d.head(a);
        }
        circuits.push(c);
    }
    CircuitDecomposition::new(d, circuits)
}

/// Undirected multigraph with loops, edges indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(DigraphError::EdgeVertexOutOfRange { edge: i, vertex: x, n });
                }
            }
        }
        Ok(UndirectedGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn check_even(&self) -> Result<(), DigraphError> {
        match (0..self.n).map(|v| (v, self.degree(v))).find(|&(_, d)| d % 2 == 1) {
            Some((vertex, degree)) => Err(DigraphError::OddDegree { vertex, degree }),
            None => Ok(()),
        }
    }

    pub fn simple_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, &self.edges)
    }

    /// An euler circuit as `(edge, from, to)` steps: Hierholzer from the
    /// lowest vertex with an edge, lowest unused edge first.
    pub fn euler_circuit(&self) -> Result<Vec<(EdgeId, VertexId, VertexId)>, DigraphError> {
        if self.edges.is_empty() {
            return Err(DigraphError::NoArcs);
        }
        self.check_even()?;
        let mut incident = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(e);
            if u != v {
                incident[v].push(e);
            }
        }
        let start = (0..self.n).find(|&v| !incident[v].is_empty()).expect("some edge exists");
        let mut used = vec![false; self.edges.len()];
        let mut next = vec![0usize; self.n];
        let mut stack: Vec<(VertexId, Option<(EdgeId, VertexId)>)> = vec![(start, None)];
        let mut steps = Vec::new();
        while let Some(&(v, _)) = stack.last() {
            while next[v] < incident[v].len() && used[incident[v][next[v]]] {
                next[v] += 1;
            }
            if next[v] < incident[v].len() {
                let e = incident[v][next[v]];
                used[e] = true;
                let (a, b) = self.edges[e];
                let w = if a == v { b } else { a };
                stack.push((w, Some((e, v))));
            } else {
                let (w, step) = stack.pop().expect("stack is nonempty");
                if let Some((e, from)) = step {
                    steps.push((e, from, w));
                }
            }
        }
        if steps.len() != self.edges.len() {
            return Err(DigraphError::Disconnected);
        }
        steps.reverse();
        Ok(steps)
    }

    /// Orients every edge along an euler circuit; arc `i` is edge `i`.
    pub fn euler_orientation(&self) -> Result<Digraph, DigraphError> {
        let mut arcs = vec![(0, 0); self.edges.len()];
        for (e, from, to) in self.euler_circuit()? {
            arcs[e] = (from, to);
        }
        Digraph::new(self.n, arcs)
    }
}

/// Orients `g` so that every listed circuit (a closed walk of edge ids) becomes
/// a directed circuit traversed in its listed direction. Arc `i` is edge `i`.
pub fn eulerian_orientation(
    g: &UndirectedGraph,
    circuits: &[Vec<EdgeId>],
) -> Result<(Digraph, CircuitDecomposition), DigraphError> {
    g.check_even()?;
    let mut orient: Vec<Option<(VertexId, VertexId)>> = vec![None; g.edges.len()];
    for (index, c) in circuits.iter().enumerate() {
        let invalid = |reason: String| DigraphError::InvalidCircuit { index, reason };
        if c.is_empty() {
            return Err(invalid("circuit is empty".into()));
        }
        if let Some(&e) = c.iter().find(|&&e| e >= g.edges.len()) {
            return Err(invalid(format!("edge {e} does not exist")));
        }
        let (u0, v0) = g.edges[c[0]];
        let walk = [u0, v0]
            .into_iter()
            .find_map(|start| traverse(g, c, start))
            .ok_or_else(|| invalid("edges do not form a closed walk".into()))?;
        for (&e, step) in c.iter().zip(walk) {
            if orient[e].is_some() {
                return Err(DigraphError::NotADecomposition(format!("edge {e} is used by more than one circuit")));
            }
            orient[e] = Some(step);
        }
    }
    let arcs = orient
        .iter()
        .enumerate()
        .map(|(e, o)| o.ok_or_else(|| DigraphError::NotADecomposition(format!("edge {e} is not covered"))))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Digraph::new(g.n, arcs)?;
    let dec = CircuitDecomposition::new(&d, circuits.to_vec())?;
    Ok((d, dec))
}

fn traverse(g: &UndirectedGraph, c: &[EdgeId], start: VertexId) -> Option<Vec<(VertexId, VertexId)>> {
    let mut at = start;
    let mut steps = Vec::with_capacity(c.len());
    for &e in c {
        let (a, b) = g.edges[e];
        let to = if a == at {
            b
        } else if b == at {
            a
        } else {
            return None;
        };
        steps.push((at, to));
        at = to;
    }
    (at == start).then_some(steps)
}

/// Union-find over vertex ids.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
