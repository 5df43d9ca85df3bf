//! Interlaced vertex pairs on antifaces and the searches that find them.
//!
//! Two vertices `x != y` are interlaced on a closed walk `W` if `W` visits
//! them in cyclic order `x ... y ... x ... y ...`. Interlacing is unchanged by
//! deleting consecutive repeats, so all scans run on `usg(W)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::digraph::{SimpleGraph, VertexId};
use crate::embedding::{Embedding, FaceWalk};

/// `usg(W)`: the vertex sequence of a closed walk with cyclically consecutive
/// duplicates removed. `positions[i]` is the walk position of `vertices[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsgWalk {
    pub vertices: Vec<VertexId>,
    pub positions: Vec<usize>,
}

impl UsgWalk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Undirected edges `{v_i, v_{i+1}}` of the simple closed walk.
    pub fn edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        let t = self.vertices.len();
        if t < 2 {
            return BTreeSet::new();
        }
        (0..t)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % t]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

pub fn usg_walk(seq: &[VertexId]) -> UsgWalk {
    let t = seq.len();
    if t == 0 {
        return UsgWalk { vertices: Vec::new(), positions: Vec::new() };
    }
    let Some(start) = (0..t).find(|&i| seq[i] != seq[(i + t - 1) % t]) else {
        return UsgWalk { vertices: vec![seq[0]], positions: vec![0] };
    };
    let mut vertices = Vec::new();
    let mut positions = Vec::new();
    for off in 0..t {
        let i = (start + off) % t;
        if vertices.last() != Some(&seq[i]) {
            vertices.push(seq[i]);
            positions.push(i);
        }
    }
    UsgWalk { vertices, positions }
}

/// Positions `[p1, q1, p2, q2]` in cyclic order with `seq[p*] = x` and
/// `seq[q*] = y`, or `None` when `x` and `y` are not interlaced.
pub fn interlacing_positions(seq: &[VertexId], x: VertexId, y: VertexId) -> Option<[usize; 4]> {
    if x == y {
        return None;
    }
    let hits: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] == x || seq[i] == y).collect();
    let h = hits.len();
    let run_start = |j: usize| seq[hits[j]] != seq[hits[(j + h - 1) % h]];
    let starts: Vec<usize> = (0..h).filter(|&j| run_start(j)).map(|j| hits[j]).collect();
    if starts.len() < 4 {
        return None;
    }
    let first = starts.iter().position(|&i| seq[i] == x)?;
    let pick: Vec<usize> = (0..4).map(|o| starts[(first + o) % starts.len()]).collect();
    Some([pick[0], pick[1], pick[2], pick[3]])
}

pub fn are_interlaced(seq: &[VertexId], x: VertexId, y: VertexId) -> bool {
    interlacing_positions(seq, x, y).is_some()
}

/// True when `ps` is strictly increasing in the cyclic order that starts at `ps[0]`.
pub(crate) fn cyclically_ordered(ps: &[usize], len: usize) -> bool {
    let rel: Vec<usize> = ps.iter().map(|&p| (p + len - ps[0]) % len).collect();
    rel.windows(2).all(|w| w[0] < w[1]) && ps.iter().all(|&p| p < len)
}

/// Witness that `x` and `y` are interlaced on antiface `face`: walk
/// positions `[p1, q1, p2, q2]` visiting `x, y, x, y` in cyclic order.
/// Companion faces, when set, are an antiface `B` through `x` and an
/// antiface `C` through `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingCertificate {
    pub face: usize,
    pub x: VertexId,
    pub y: VertexId,
    pub positions: [usize; 4],
    pub companions: Option<(usize, usize)>,
}

impl InterlacingCertificate {
    pub fn from_face(e: &Embedding, face: usize, x: VertexId, y: VertexId) -> Option<Self> {
        let seq = e.antiface(face).vertex_sequence(e.digraph());
        let positions = interlacing_positions(&seq, x, y)?;
        Some(InterlacingCertificate { face, x, y, positions, companions: None })
    }

    pub fn with_companions(mut self, b: usize, c: usize) -> Self {
        self.companions = Some((b, c));
        self
    }

    /// Rechecks the certificate against `e` without trusting any search.
    pub fn validate(&self, e: &Embedding) -> Result<(), InterlaceError> {
        let bad = |why: &str| Err(InterlaceError::InvalidCertificate(why.to_string()));
        if self.face >= e.antiface_count() {
            return bad("face id out of range");
        }
        if self.x == self.y {
            return bad("x and y coincide");
        }
        let d = e.digraph();
        let seq = e.antiface(self.face).vertex_sequence(d);
        if !cyclically_ordered(&self.positions, seq.len()) {
            return bad("positions are not in cyclic order");
        }
        let want = [self.x, self.y, self.x, self.y];
        if self.positions.iter().zip(want).any(|(&p, v)| seq[p] != v) {
            return bad("positions do not alternate x, y, x, y");
        }
        if let Some((b, c)) = self.companions {
            let distinct = b != c && b != self.face && c != self.face;
            if !distinct || b >= e.antiface_count() || c >= e.antiface_count() {
                return bad("companion faces are not three distinct antifaces");
            }
            if !e.antiface(b).contains_vertex(d, self.x) || !e.antiface(c).contains_vertex(d, self.y) {
                return bad("companion faces miss x or y");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterlaceError {
    #[error("vertex {vertex} lies on {count} antifaces; the embedding is not locally irreducible")]
    NotLocallyIrreducible { vertex: VertexId, count: usize },
    #[error("invalid interlacing certificate: {0}")]
    InvalidCertificate(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("no interlaced pair found although the hypotheses hold")]
    NotFound,
    #[error("bipartite degeneracy: {edges} edges on {vertices} vertices do not exceed d(|V|-d) for d = {d}")]
    TooFewEdges { vertices: usize, edges: usize, d: usize },
}

/// Antifaces through each vertex of a locally irreducible embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeTable {
    faces_at: Vec<Vec<usize>>,
    face_vertices: Vec<BTreeSet<VertexId>>,
}

/// Type of a vertex: the one or two antifaces it lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    Single(usize),
    Pair(usize, usize),
}

impl VertexType {
    pub fn contains(self, f: usize) -> bool {
        match self {
            VertexType::Single(a) => a == f,
            VertexType::Pair(a, b) => a == f || b == f,
        }
    }

    /// For a type `AP` with `A = f`, returns `P`.
    pub fn other(self, f: usize) -> Option<usize> {
        match self {
            VertexType::Pair(a, b) if a == f => Some(b),
            VertexType::Pair(a, b) if b == f => Some(a),
            _ => None,
        }
    }
}

impl TypeTable {
    pub fn new(e: &Embedding) -> Result<Self, InterlaceError> {
        let faces_at = e.antifaces_at();
        for (vertex, list) in faces_at.iter().enumerate() {
            if list.len() > 2 {
                return Err(InterlaceError::NotLocallyIrreducible { vertex, count: list.len() });
            }
        }
        let face_vertices = e.antifaces().iter().map(|f| f.vertex_set(e.digraph())).collect();
        Ok(TypeTable { faces_at, face_vertices })
    }

    pub fn face_count(&self) -> usize {
        self.face_vertices.len()
    }

    pub fn faces_at(&self, v: VertexId) -> &[usize] {
        &self.faces_at[v]
    }

    pub fn vertex_type(&self, v: VertexId) -> VertexType {
        match self.faces_at[v][..] {
            [a] => VertexType::Single(a),
            [a, b] => VertexType::Pair(a, b),
            _ => unreachable!("every vertex of an eulerian digraph lies on one or two antifaces here"),
        }
    }

    /// `V(A)`.
    pub fn vertices(&self, a: usize) -> &BTreeSet<VertexId> {
        &self.face_vertices[a]
    }

    /// `AB = V(A) ∩ V(B)`; for `A = B`, the vertices of type `AA` do not exist.
    pub fn ab(&self, a: usize, b: usize) -> BTreeSet<VertexId> {
        self.face_vertices[a].intersection(&self.face_vertices[b]).copied().collect()
    }

    /// `A \ B`.
    pub fn a_minus_b(&self, a: usize, b: usize) -> BTreeSet<VertexId> {
        self.face_vertices[a].difference(&self.face_vertices[b]).copied().collect()
    }

    /// Vertices lying only on `A`.
    pub fn a0(&self, a: usize) -> BTreeSet<VertexId> {
        self.face_vertices[a].iter().copied().filter(|&v| self.faces_at[v].len() == 1).collect()
    }

    /// Vertices on `A` and exactly one other antiface.
    pub fn a1(&self, a: usize) -> BTreeSet<VertexId> {
        self.face_vertices[a].iter().copied().filter(|&v| self.faces_at[v].len() == 2).collect()
    }
}

/// An embedding with its type table, `usg(D)` and density parameter cached.
#[derive(Debug, Clone)]
pub struct LocalView<'a> {
    pub embedding: &'a Embedding,
    pub types: TypeTable,
    pub usg: SimpleGraph,
    pub n: usize,
    pub k: usize,
}

impl<'a> LocalView<'a> {
    pub fn new(embedding: &'a Embedding) -> Result<Self, InterlaceError> {
        let types = TypeTable::new(embedding)?;
        let d = embedding.digraph();
        let usg = d.underlying_simple_graph();
        let profile = d.density_profile();
        Ok(LocalView { embedding, types, usg, n: profile.n, k: profile.k })
    }

    fn face(&self, f: usize) -> &FaceWalk {
        self.embedding.antiface(f)
    }

    fn usg_of(&self, f: usize) -> UsgWalk {
        usg_walk(&self.face(f).vertex_sequence(self.embedding.digraph()))
    }

    /// Certificate for `x`, `y` on `face`, with companions read off the types.
    fn certificate(&self, face: usize, x: VertexId, y: VertexId) -> Option<InterlacingCertificate> {
        let cert = InterlacingCertificate::from_face(self.embedding, face, x, y)?;
        let bx = self.types.vertex_type(x).other(face)?;
        let cy = self.types.vertex_type(y).other(face)?;
        Some(if bx != cy { cert.with_companions(bx, cy) } else { cert })
    }
}

/// Lowest vertex lying on three or more antifaces, with its three lowest ids.
pub fn find_vertex_on_three_antifaces(e: &Embedding) -> Option<(VertexId, [usize; 3])> {
    e.antifaces_at()
        .into_iter()
        .enumerate()
        .find(|(_, list)| list.len() >= 3)
        .map(|(v, list)| (v, [list[0], list[1], list[2]]))
}

/// Finds `x, y` in `s` of different types interlaced on antiface `a`, by the
/// minimal-interval scan on `usg(A)`: among intervals from an occurrence of
/// some `x` in `s` to its next occurrence that contain a member of `s` of
/// another type, take the shortest (earliest start on ties).
pub fn three_neighbor_search(
    view: &LocalView,
    a: usize,
    s: &BTreeSet<VertexId>,
) -> Result<InterlacingCertificate, InterlaceError> {
    let types = &view.types;
    for &v in s {
        if !types.vertex_type(v).contains(a) || types.faces_at(v).len() != 2 {
            return Err(InterlaceError::Hypothesis(format!("vertex {v} is not on {a} and exactly one other antiface")));
        }
        let tv = types.vertex_type(v);
        let cross = view.usg.neighbors(v).filter(|u| s.contains(u) && types.vertex_type(*u) != tv).count();
        if cross < 3 {
            return Err(InterlaceError::Hypothesis(format!(
                "vertex {v} has {cross} neighbours in S of another type, fewer than 3"
            )));
        }
    }
    if s.is_empty() {
        return Err(InterlaceError::Hypothesis("S is empty".into()));
    }
    let walk = view.usg_of(a);
    let seq = &walk.vertices;
    let t = seq.len();
    let mut best: Option<(usize, usize, VertexId)> = None;
    for start in 0..t {
        let x = seq[start];
        if !s.contains(&x) {
            continue;
        }
        let tx = types.vertex_type(x);
        let mut found = false;
        let mut len = t;
        for off in 1..=t {
            let v = seq[(start + off) % t];
            if v == x {
                len = off;
                break;
            }
            if s.contains(&v) && types.vertex_type(v) != tx {
                found = true;
            }
        }
        if found && best.is_none_or(|(l, _, _)| len < l) {
            best = Some((len, start, x));
        }
    }
    let (len, start, x) = best.ok_or(InterlaceError::NotFound)?;
    let tx = types.vertex_type(x);
    for off in 1..len {
        let y = seq[(start + off) % t];
        if s.contains(&y) && types.vertex_type(y) != tx {
            if let Some(cert) = view.certificate(a, x, y) {
                return Ok(cert);
            }
        }
    }
    Err(InterlaceError::NotFound)
}

/// Given `t, u, v` of a common type `AC` with `tu, uv` on `usg(A)`, and `x`
/// of type `AB` (`B != C`) adjacent to all three, returns a certificate for
/// `x` interlaced on `A` with one of `t, u, v`. Candidates are tested directly
/// in the order `t, u, v`.
pub fn diamond_search(
    view: &LocalView,
    a: usize,
    tuv: [VertexId; 3],
    x: VertexId,
) -> Result<InterlacingCertificate, InterlaceError> {
    let types = &view.types;
    let [t, u, v] = tuv;
    let hyp = |why: String| Err(InterlaceError::Hypothesis(why));
    if t == u || u == v || t == v || tuv.contains(&x) {
        return hyp("t, u, v, x must be distinct".into());
    }
    let tt = types.vertex_type(t);
    if types.vertex_type(u) != tt || types.vertex_type(v) != tt {
        return hyp("t, u, v do not share a type".into());
    }
    let (Some(c), Some(b)) = (tt.other(a), types.vertex_type(x).other(a)) else {
        return hyp(format!("t and x must both lie on antiface {a} and one other"));
    };
    if b == c {
        return hyp("x has the same type as t, u, v".into());
    }
    let edges = view.usg_of(a).edges();
    let on_a = |p: VertexId, q: VertexId| edges.contains(&(p.min(q), p.max(q)));
    if !on_a(t, u) || !on_a(u, v) {
        return hyp("tu and uv must be edges of usg(A)".into());
    }
    for w in tuv {
        if !view.usg.has_edge(x, w) {
            return hyp(format!("x = {x} is not adjacent to {w}"));
        }
    }
    tuv.iter().find_map(|&y| view.certificate(a, x, y)).ok_or(InterlaceError::NotFound)
}

/// Applies when the embedding has at least three antifaces and
/// `|A1| - |AP| >= k + 3` for every `P != A`; then searches with `S = A1`.
pub fn check_three_neighbor_corollary(
    view: &LocalView,
    a: usize,
) -> Result<Option<InterlacingCertificate>, InterlaceError> {
    let types = &view.types;
    if types.face_count() < 3 {
        return Ok(None);
    }
    let a1 = types.a1(a);
    let margin_ok = (0..types.face_count()).filter(|&p| p != a).all(|p| a1.len() >= types.ab(a, p).len() + view.k + 3);
    if !margin_ok {
        return Ok(None);
    }
    three_neighbor_search(view, a, &a1).map(Some)
}

/// Applies when `|V(A)| >= n - k` and `|V(B)|, |V(C)| >= 2k + 3`; searches
/// with `S = AB ∪ AC`.
pub fn check_big_moderate(
    view: &LocalView,
    a: usize,
    b: usize,
    c: usize,
) -> Result<Option<InterlacingCertificate>, InterlaceError> {
    let types = &view.types;
    if a == b || b == c || a == c {
        return Ok(None);
    }
    let (n, k) = (view.n, view.k);
    if types.vertices(a).len() + k < n || types.vertices(b).len() < 2 * k + 3 || types.vertices(c).len() < 2 * k + 3 {
        return Ok(None);
    }
    let s: BTreeSet<VertexId> = types.ab(a, b).union(&types.ab(a, c)).copied().collect();
    three_neighbor_search(view, a, &s).map(Some)
}

/// Applies when `(k = 0 and |AB| >= 3)` or `|AB| >= 3k + 4`, and vertices of
/// types `AP`, `BQ` with `P, Q` outside `{A, B}` exist.
pub fn check_diamond_corollary(
    view: &LocalView,
    a: usize,
    b: usize,
) -> Result<Option<InterlacingCertificate>, InterlaceError> {
    let types = &view.types;
    let k = view.k;
    let ab = types.ab(a, b);
    if a == b || !((k == 0 && ab.len() >= 3) || ab.len() >= 3 * k + 4) {
        return Ok(None);
    }
    let outside = |f: usize, g: usize| {
        types.vertices(f).iter().copied().find(|&v| types.vertex_type(v).other(f).is_some_and(|p| p != g))
    };
    let (Some(x), Some(x2)) = (outside(a, b), outside(b, a)) else {
        return Ok(None);
    };
    let s: Vec<VertexId> =
        ab.iter().copied().filter(|&v| view.usg.has_edge(v, x) && view.usg.has_edge(v, x2)).collect();
    let adj = |p: VertexId, q: VertexId| view.usg.has_edge(p, q);
    let claw = s.iter().find_map(|&u| {
        let nb: Vec<VertexId> = s.iter().copied().filter(|&w| adj(u, w)).take(3).collect();
        (nb.len() == 3).then(|| (u, [nb[0], nb[1], nb[2]]))
    });
    let triangle = || {
        for (i, &p) in s.iter().enumerate() {
            for (j, &q) in s.iter().enumerate().skip(i + 1) {
                if !adj(p, q) {
                    continue;
                }
                if let Some(&r) = s[j + 1..].iter().find(|&&r| adj(p, r) && adj(q, r)) {
                    return Some([p, q, r]);
                }
            }
        }
        None
    };
    // Three pairwise-adjacent edges of H, each as (shared-with-next, ...).
    let edges: [(VertexId, VertexId); 3] = match (claw, triangle()) {
        (Some((u, [p, q, r])), _) => [(u, p), (u, q), (u, r)],
        (None, Some([p, q, r])) => [(p, q), (q, r), (r, p)],
        (None, None) => return Err(InterlaceError::NotFound),
    };
    let usg_a = view.usg_of(a).edges();
    let usg_b = view.usg_of(b).edges();
    let key = |(p, q): (VertexId, VertexId)| (p.min(q), p.max(q));
    for (face, face_edges, witness) in [(a, &usg_a, x), (b, &usg_b, x2)] {
        let inside: Vec<(VertexId, VertexId)> =
            edges.iter().copied().filter(|&e| face_edges.contains(&key(e))).collect();
        if inside.len() >= 2 {
            let (e1, e2) = (inside[0], inside[1]);
            let u = if e1.0 == e2.0 || e1.0 == e2.1 { e1.0 } else { e1.1 };
            let t = if e1.0 == u { e1.1 } else { e1.0 };
            let v = if e2.0 == u { e2.1 } else { e2.0 };
            return diamond_search(view, face, [t, u, v], witness).map(Some);
        }
    }
    Err(InterlaceError::NotFound)
}

/// Peels vertices of degree at most `d` from a bipartite graph with more than
/// `d(|V| - d)` edges; the nonempty remainder has minimum degree `>= d + 1`.
pub fn extract_dense_subgraph(h: &SimpleGraph, d: usize) -> Result<BTreeSet<VertexId>, InterlaceError> {
    let n = h.vertex_count();
    let mut side = vec![usize::MAX; n];
    for s in 0..n {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in h.neighbors(v) {
                if side[w] == usize::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return Err(InterlaceError::Hypothesis("graph is not bipartite".into()));
                }
            }
        }
    }
    let edges = h.edge_count();
    if n < 2 * d || edges <= d * (n - d) {
        return Err(InterlaceError::TooFewEdges { vertices: n, edges, d });
    }
    let mut alive: BTreeSet<VertexId> = (0..n).collect();
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    while let Some(v) = alive.iter().copied().find(|&v| degree[v] <= d) {
        alive.remove(&v);
        for w in h.neighbors(v) {
            if alive.contains(&w) {
                degree[w] -= 1;
            }
        }
    }
    if alive.is_empty() {
        return Err(InterlaceError::NotFound);
    }
    Ok(alive)
}
