//! Oriented directed embeddings as rotation systems.
//!
//! A rotation lists the half-arcs at a vertex in clockwise order. Faces are
//! traced with two rules, one per colour class:
//!
//! * a proface entering `v` on incoming half-arc `h` leaves on the outgoing
//!   half-arc immediately *preceding* `h`;
//! * an antiface entering on `h` leaves on the outgoing half-arc immediately
//!   *following* `h`.
//!
//! With alternating rotations both rules are bijections from incoming to
//! outgoing half-arcs at every vertex, so every arc lies on exactly one face
//! of each colour.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::digraph::{ArcId, CircuitDecomposition, Digraph, HalfArc, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("expected {expected} rotations, got {got}")]
    RotationCount { expected: usize, got: usize },
    #[error("rotation at vertex {vertex} is not a permutation of its half-arcs")]
    NotAPermutation { vertex: VertexId },
    #[error("half-arcs do not alternate in/out around vertex {vertex}")]
    NonAlternating { vertex: VertexId },
    #[error("circuit decomposition does not fit this digraph: {0}")]
    DecompositionMismatch(String),
    #[error("the digraph is not connected")]
    Disconnected,
    #[error("odd Euler genus {0}: face tracing is inconsistent")]
    OddEulerGenus(i64),
}

/// Clockwise rotations of half-arcs, one per vertex. No alternation is
/// required here; see [`Embedding`] for the validated form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    digraph: Arc<Digraph>,
    rotations: Vec<Vec<HalfArc>>,
}

impl RotationSystem {
    /// Checks that each rotation holds exactly the half-arcs at its vertex.
    /// Rotations are stored starting from their lowest half-arc.
    pub fn new(digraph: Arc<Digraph>, rotations: Vec<Vec<HalfArc>>) -> Result<Self, EmbeddingError> {
        if rotations.len() != digraph.vertex_count() {
            return Err(EmbeddingError::RotationCount { expected: digraph.vertex_count(), got: rotations.len() });
        }
        for (v, rot) in rotations.iter().enumerate() {
            let mut got: Vec<HalfArc> = rot.clone();
            got.sort();
            let mut want: Vec<HalfArc> =
                digraph.out_half_arcs(v).iter().chain(digraph.in_half_arcs(v)).copied().collect();
            want.sort();
            if got != want {
                return Err(EmbeddingError::NotAPermutation { vertex: v });
            }
        }
        let rotations = rotations.into_iter().map(|r| normalize_rotation(&r)).collect();
        Ok(RotationSystem { digraph, rotations })
    }

    pub fn digraph(&self) -> &Arc<Digraph> {
        &self.digraph
    }

    pub fn rotations(&self) -> &[Vec<HalfArc>] {
        &self.rotations
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfArc] {
        &self.rotations[v]
    }

    pub fn non_alternating_vertices(&self) -> Vec<VertexId> {
        (0..self.rotations.len()).filter(|&v| !is_alternating(&self.rotations[v])).collect()
    }

    pub fn check_alternation(&self) -> Result<(), EmbeddingError> {
        match self.non_alternating_vertices().first() {
            Some(&vertex) => Err(EmbeddingError::NonAlternating { vertex }),
            None => Ok(()),
        }
    }

    /// Rebuilds rotations from the two successor maps (indexed by arc id of
    /// the incoming half-arc): `pro[a]` precedes `2a+1`, `anti[a]` follows it.
    pub fn from_face_transitions(
        digraph: Arc<Digraph>,
        pro: &[HalfArc],
        anti: &[HalfArc],
    ) -> Result<Self, EmbeddingError> {
        let m = digraph.arc_count();
        let mut pro_inv = vec![usize::MAX; m];
        for (a, g) in pro.iter().enumerate() {
            pro_inv[g.arc()] = a;
        }
        let mut rotations = Vec::with_capacity(digraph.vertex_count());
        for v in 0..digraph.vertex_count() {
            let Some(&h0) = digraph.in_half_arcs(v).first() else {
                rotations.push(Vec::new());
                continue;
            };
            let mut rot = Vec::new();
            let mut h = h0;
            loop {
                rot.push(pro[h.arc()]);
                rot.push(h);
                let next_out = anti[h.arc()];
                let a = pro_inv[next_out.arc()];
                if a == usize::MAX {
                    return Err(EmbeddingError::NotAPermutation { vertex: v });
                }
                h = HalfArc::incoming(a);
                if h == h0 || rot.len() > 2 * digraph.indegree(v) {
                    break;
                }
            }
            rotations.push(rot);
        }
        RotationSystem::new(digraph, rotations)
    }
}

fn is_alternating(rot: &[HalfArc]) -> bool {
    rot.len().is_multiple_of(2)
        && (0..rot.len()).all(|i| rot[i].is_outgoing() != rot[(i + 1) % rot.len()].is_outgoing())
}

fn normalize_rotation(rot: &[HalfArc]) -> Vec<HalfArc> {
    match rot.iter().enumerate().min_by_key(|&(_, h)| *h) {
        Some((i, _)) => rot[i..].iter().chain(&rot[..i]).copied().collect(),
        None => Vec::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceColor {
    Proface,
    Antiface,
}

/// A facial walk, stored as its arc sequence rotated to start at the lowest
/// arc id. That rotation is the face's canonical identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceWalk {
    arcs: Vec<ArcId>,
    color: FaceColor,
}

impl FaceWalk {
    pub fn new(arcs: &[ArcId], color: FaceColor) -> Self {
        FaceWalk { arcs: crate::digraph::canonical_rotation(arcs), color }
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn color(&self) -> FaceColor {
        self.color
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Canonical identity; equal for any cyclic shift of the same walk.
    pub fn canonical_id(&self) -> &[ArcId] {
        &self.arcs
    }

    /// Half-arc sequence `out, in, out, in, ...`.
    pub fn half_arcs(&self) -> Vec<HalfArc> {
        self.arcs.iter().flat_map(|&a| [HalfArc::outgoing(a), HalfArc::incoming(a)]).collect()
    }

    /// Vertex occurrences: position `i` is the tail of arc `i`.
    pub fn vertex_sequence(&self, d: &Digraph) -> Vec<VertexId> {
        self.arcs.iter().map(|&a| d.tail(a)).collect()
    }

    pub fn vertex_set(&self, d: &Digraph) -> BTreeSet<VertexId> {
        self.arcs.iter().map(|&a| d.tail(a)).collect()
    }

    pub fn contains_vertex(&self, d: &Digraph, v: VertexId) -> bool {
        self.arcs.iter().any(|&a| d.tail(a) == v)
    }

    /// The incoming half-arc on which the walk arrives at position `i`.
    pub fn entry_at(&self, i: usize) -> HalfArc {
        let prev = self.arcs[(i + self.arcs.len() - 1) % self.arcs.len()];
        HalfArc::incoming(prev)
    }

    /// Positions at which the walk visits `v`, with the entering half-arc.
    pub fn visits(&self, d: &Digraph, v: VertexId) -> Vec<(usize, HalfArc)> {
        (0..self.arcs.len()).filter(|&i| d.tail(self.arcs[i]) == v).map(|i| (i, self.entry_at(i))).collect()
    }

    /// Arc sequence of the closed subwalk from position `from` up to (not
    /// including) position `to`, cyclically.
    pub fn subwalk(&self, from: usize, to: usize) -> Vec<ArcId> {
        let len = self.arcs.len();
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(self.arcs[i]);
            i = (i + 1) % len;
            if i == to {
                break;
            }
        }
        out
    }
}

/// Traced faces of a rotation system, each colour sorted by lowest arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    pub profaces: Vec<FaceWalk>,
    pub antifaces: Vec<FaceWalk>,
    proface_of_arc: Vec<usize>,
    antiface_of_arc: Vec<usize>,
}

impl Faces {
    pub fn proface_of_arc(&self, a: ArcId) -> usize {
        self.proface_of_arc[a]
    }

    pub fn antiface_of_arc(&self, a: ArcId) -> usize {
        self.antiface_of_arc[a]
    }

    /// Looks up an antiface by canonical identity.
    pub fn antiface_index(&self, face: &FaceWalk) -> Option<usize> {
        let first = *face.arcs.first()?;
        let idx = *self.antiface_of_arc.get(first)?;
        (self.antifaces[idx] == *face).then_some(idx)
    }

    /// `(pro, anti)` successor tables indexed by the arc of an incoming half-arc.
    pub fn successor_maps(&self, m: usize) -> (Vec<HalfArc>, Vec<HalfArc>) {
        let table = |faces: &[FaceWalk]| {
            let mut t = vec![HalfArc(0); m];
            for f in faces {
                for (i, &a) in f.arcs.iter().enumerate() {
                    t[a] = HalfArc::outgoing(f.arcs[(i + 1) % f.arcs.len()]);
                }
            }
            t
        };
        (table(&self.profaces), table(&self.antifaces))
    }
}

/// Traces both face classes. Fails on a non-alternating rotation.
pub fn trace_faces(rs: &RotationSystem) -> Result<Faces, EmbeddingError> {
    rs.check_alternation()?;
    let d = rs.digraph();
    let m = d.arc_count();
    let mut slot = vec![(0usize, 0usize); 2 * m];
    for (v, rot) in rs.rotations.iter().enumerate() {
        for (i, h) in rot.iter().enumerate() {
            slot[h.0] = (v, i);
        }
    }
    let step = |a: ArcId, forward: bool| -> ArcId {
        let (v, i) = slot[HalfArc::incoming(a).0];
        let rot = &rs.rotations[v];
        let j = if forward { (i + 1) % rot.len() } else { (i + rot.len() - 1) % rot.len() };
        rot[j].arc()
    };
    let trace = |forward: bool, color: FaceColor| {
        let mut owner = vec![usize::MAX; m];
        let mut faces = Vec::new();
        for start in 0..m {
            if owner[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut a = start;
            while owner[a] == usize::MAX {
                owner[a] = faces.len();
                walk.push(a);
                a = step(a, forward);
            }
            debug_assert_eq!(a, start, "face tracing must close up");
            faces.push(FaceWalk { arcs: walk, color });
        }
        (faces, owner)
    };
    let (profaces, proface_of_arc) = trace(false, FaceColor::Proface);
    let (antifaces, antiface_of_arc) = trace(true, FaceColor::Antiface);
    Ok(Faces { profaces, antifaces, proface_of_arc, antiface_of_arc })
}

/// An alternating rotation system together with its traced faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: RotationSystem,
    faces: Faces,
}

impl Embedding {
    pub fn new(rotation: RotationSystem) -> Result<Self, EmbeddingError> {
        let faces = trace_faces(&rotation)?;
        Ok(Embedding { rotation, faces })
    }

    pub fn from_rotations(digraph: Arc<Digraph>, rotations: Vec<Vec<HalfArc>>) -> Result<Self, EmbeddingError> {
        Embedding::new(RotationSystem::new(digraph, rotations)?)
    }

    pub fn digraph(&self) -> &Arc<Digraph> {
        self.rotation.digraph()
    }

    pub fn rotation_system(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn rotations(&self) -> &[Vec<HalfArc>] {
        self.rotation.rotations()
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn profaces(&self) -> &[FaceWalk] {
        &self.faces.profaces
    }

    pub fn antifaces(&self) -> &[FaceWalk] {
        &self.faces.antifaces
    }

    pub fn antiface(&self, id: usize) -> &FaceWalk {
        &self.faces.antifaces[id]
    }

    pub fn antiface_count(&self) -> usize {
        self.faces.antifaces.len()
    }

    pub fn proface_count(&self) -> usize {
        self.faces.profaces.len()
    }

    /// Antifaces through each vertex, as sorted antiface ids.
    pub fn antifaces_at(&self) -> Vec<Vec<usize>> {
        let d = self.digraph();
        let mut at = vec![Vec::new(); d.vertex_count()];
        for (id, f) in self.faces.antifaces.iter().enumerate() {
            for &a in f.arcs() {
                let v = d.tail(a);
                if at[v].last() != Some(&id) && !at[v].contains(&id) {
                    at[v].push(id);
                }
            }
        }
        for list in &mut at {
            list.sort_unstable();
        }
        at
    }

    /// Replaces the rotation at one vertex and retraces.
    pub fn with_rotation(&self, v: VertexId, rotation: Vec<HalfArc>) -> Result<Embedding, EmbeddingError> {
        let mut rotations = self.rotation.rotations.clone();
        rotations[v] = rotation;
        Embedding::from_rotations(self.digraph().clone(), rotations)
    }

    pub fn euler_genus(&self) -> Result<i64, EmbeddingError> {
        let d = self.digraph();
        if !d.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let faces = (self.proface_count() + self.antiface_count()) as i64;
        Ok(2 - d.vertex_count() as i64 + d.arc_count() as i64 - faces)
    }

    /// Orientable genus `g` with `V - A + F = 2 - 2g`.
    pub fn genus(&self) -> Result<usize, EmbeddingError> {
        let gamma = self.euler_genus()?;
        if gamma % 2 != 0 || gamma < 0 {
            return Err(EmbeddingError::OddEulerGenus(gamma));
        }
        Ok((gamma / 2) as usize)
    }
}

/// Free-function form of [`Embedding::genus`].
pub fn euler_genus(e: &Embedding) -> Result<usize, EmbeddingError> {
    e.genus()
}

/// The embedding whose profaces are exactly the circuits of `c`: at each
/// vertex with incoming half-arcs `h_0 < h_1 < ...` the rotation is
/// `(fw(h_0) h_0 fw(h_1) h_1 ...)`.
pub fn embed_from_decomposition(d: Arc<Digraph>, c: &CircuitDecomposition) -> Result<Embedding, EmbeddingError> {
    let covered: usize = c.circuits().iter().map(|x| x.len()).sum();
    if covered != d.arc_count() {
        return Err(EmbeddingError::DecompositionMismatch(format!(
            "circuits cover {covered} arcs, digraph has {}",
            d.arc_count()
        )));
    }
    let mut rotations = Vec::with_capacity(d.vertex_count());
    for v in 0..d.vertex_count() {
        let mut rot = Vec::with_capacity(2 * d.indegree(v));
        for &h in d.in_half_arcs(v) {
            let g = c.fw(h);
            if g.arc() >= d.arc_count() || d.tail(g.arc()) != v {
                return Err(EmbeddingError::DecompositionMismatch(format!(
                    "successor of {h} does not leave vertex {v}"
                )));
            }
            rot.push(g);
            rot.push(h);
        }
        rotations.push(rot);
    }
    Embedding::from_rotations(d, rotations)
}

/// One failed check in a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonAlternating { vertex: VertexId },
    ProfaceMismatch { missing: Vec<Vec<ArcId>>, unexpected: Vec<Vec<ArcId>> },
    ArcCoverage { arc: ArcId, profaces: usize, antifaces: usize },
    Parity { antifaces: usize, expected_parity: usize },
    OddEulerGenus { euler_genus: i64 },
    Disconnected,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonAlternating { vertex } => write!(f, "alternation fails at vertex {vertex}"),
            Violation::ProfaceMismatch { missing, unexpected } => {
                write!(f, "profaces differ from circuits: missing {missing:?}, unexpected {unexpected:?}")
            }
            Violation::ArcCoverage { arc, profaces, antifaces } => {
                write!(f, "arc {arc} lies on {profaces} profaces and {antifaces} antifaces")
            }
            Violation::Parity { antifaces, expected_parity } => {
                write!(f, "{antifaces} antifaces, but parity of |V|+|A|+|C| is {expected_parity}")
            }
            Violation::OddEulerGenus { euler_genus } => write!(f, "Euler genus {euler_genus} is odd"),
            Violation::Disconnected => write!(f, "digraph is disconnected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
    pub antifaces: usize,
    pub profaces: usize,
    pub genus: Option<usize>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks alternation, profaces = `c`, per-arc (1, 1) coverage, the antiface
/// parity law and evenness of the Euler genus.
pub fn verify_embedding(rs: &RotationSystem, c: &CircuitDecomposition) -> VerificationReport {
    let mut report = VerificationReport::default();
    let bad = rs.non_alternating_vertices();
    if !bad.is_empty() {
        report.violations.extend(bad.into_iter().map(|vertex| Violation::NonAlternating { vertex }));
        return report;
    }
    let faces = trace_faces(rs).expect("alternation was checked");
    let d = rs.digraph();
    report.antifaces = faces.antifaces.len();
    report.profaces = faces.profaces.len();

    let traced: BTreeSet<Vec<ArcId>> = faces.profaces.iter().map(|f| f.arcs.clone()).collect();
    let wanted: BTreeSet<Vec<ArcId>> = c.canonical_set().into_iter().collect();
    if traced != wanted {
        report.violations.push(Violation::ProfaceMismatch {
            missing: wanted.difference(&traced).cloned().collect(),
            unexpected: traced.difference(&wanted).cloned().collect(),
        });
    }

    let mut pro = vec![0usize; d.arc_count()];
    let mut anti = vec![0usize; d.arc_count()];
    for f in &faces.profaces {
        for &a in f.arcs() {
            pro[a] += 1;
        }
    }
    for f in &faces.antifaces {
        for &a in f.arcs() {
            anti[a] += 1;
        }
    }
    for a in 0..d.arc_count() {
        if pro[a] != 1 || anti[a] != 1 {
            report.violations.push(Violation::ArcCoverage { arc: a, profaces: pro[a], antifaces: anti[a] });
        }
    }

    if !d.is_connected() {
        report.violations.push(Violation::Disconnected);
        return report;
    }
    let expected_parity = (d.vertex_count() + d.arc_count() + c.len()) % 2;
    if faces.antifaces.len() % 2 != expected_parity {
        report.violations.push(Violation::Parity { antifaces: faces.antifaces.len(), expected_parity });
    }
    let gamma =
        2 - d.vertex_count() as i64 + d.arc_count() as i64 - (faces.profaces.len() + faces.antifaces.len()) as i64;
    if gamma % 2 != 0 {
        report.violations.push(Violation::OddEulerGenus { euler_genus: gamma });
    } else {
        report.genus = Some((gamma / 2) as usize);
    }
    report
}
