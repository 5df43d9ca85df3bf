//! Reduction of an embedding to one or two antifaces with fixed profaces.
//!
//! Each round either merges three antifaces at a vertex, or classifies the
//! touch graph and finds an interlaced pair to merge, blowing up small faces
//! first where needed. Every round ends with the antiface count down by two.

pub mod small;
pub mod trace;

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{
    euler_circuits_of_subgraph, eulerian_orientation, ArcId, CircuitDecomposition, DensityProfile, Digraph,
    DigraphError, DirectedCircuit, EdgeId, SimpleGraph, UndirectedGraph, VertexId,
};
use crate::embedding::{embed_from_decomposition, verify_embedding, Embedding, EmbeddingError};
use crate::interlace::{
    are_interlaced, check_big_moderate, check_diamond_corollary, check_three_neighbor_corollary,
    extract_dense_subgraph, find_vertex_on_three_antifaces, three_neighbor_search, InterlaceError,
    InterlacingCertificate, LocalView,
};
use crate::surgery::{blow_up, merge_interlaced, merge_three_at_vertex, SurgeryError};
use crate::touch::TouchGraph;
pub use small::small_order_embedding;
pub use trace::{Op, ReductionTrace, TraceStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Requires a dense eulerian digraph; any dead end is an error.
    #[default]
    Strict,
    /// Runs on any eulerian digraph; dead ends fall back to a generic search
    /// for an interlaced triple and may stall.
    BestEffort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// One or two antifaces, matching the parity bound.
    Upper,
    /// More than two antifaces, but provably the minimum (two-vertex
    /// digraphs with a 2-edge-cut).
    Minimal,
    /// Best-effort run that found nothing left to merge.
    Stalled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOptions {
    pub mode: Mode,
    /// Run `verify_embedding` after every step.
    pub verify_steps: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { mode: Mode::Strict, verify_steps: cfg!(debug_assertions) }
    }
}

impl ReduceOptions {
    pub fn new(mode: Mode) -> Self {
        ReduceOptions { mode, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub embedding: Embedding,
    pub trace: ReductionTrace,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error("not dense: n = {}, min degree {} (k = {}); need n >= 5k + 7", .0.n, .0.delta, .0.k)]
    NotDense(DensityProfile),
    #[error("no progress in case {case}: {reason}")]
    NoProgress { case: String, reason: String },
    #[error("step limit {limit} exceeded")]
    StepLimit { limit: usize },
    #[error("{n} vertices; the small-order construction needs at most 2")]
    TooManyVertices { n: usize },
    #[error("verification failed after a {case} step: {detail}")]
    Verification { case: String, detail: String },
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Interlace(#[from] InterlaceError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

impl ReduceError {
    /// Failures that mean "this case does not apply here" rather than a bug.
    fn is_soft(&self) -> bool {
        let soft_interlace = |e: &InterlaceError| !matches!(e, InterlaceError::InvalidCertificate(_));
        match self {
            ReduceError::Interlace(e) => soft_interlace(e),
            ReduceError::Surgery(e) => match e {
                SurgeryError::Precondition(_) | SurgeryError::NotInterlaced { .. } => true,
                SurgeryError::FaceNotAtVertex { .. } | SurgeryError::NotDistinct(_) => true,
                SurgeryError::Interlace(e) => soft_interlace(e),
                _ => false,
            },
            _ => false,
        }
    }
}

/// One round of the case machine. Steps are buffered so a failed round
/// leaves no trace.
struct Round<'m> {
    circuits: &'m CircuitDecomposition,
    verify: bool,
    steps: Vec<TraceStep>,
    dead_end: Option<(String, String)>,
}

type Step<T> = Result<Option<T>, ReduceError>;

impl<'m> Round<'m> {
    fn new(circuits: &'m CircuitDecomposition, verify: bool) -> Self {
        Round { circuits, verify, steps: Vec::new(), dead_end: None }
    }

    fn soft<T, E: Into<ReduceError>>(&mut self, case: &str, r: Result<T, E>) -> Step<T> {
        match r.map_err(Into::into) {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_soft() => {
                self.dead_end = Some((case.to_string(), e.to_string()));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn not_applicable<T>(&mut self, case: &str, reason: &str) -> Step<T> {
        self.dead_end = Some((case.to_string(), reason.to_string()));
        Ok(None)
    }

    fn record(
        &mut self,
        case: &str,
        op: Op,
        before: &Embedding,
        after: &Embedding,
        faces: Vec<usize>,
        vertices: Vec<VertexId>,
    ) -> Result<(), ReduceError> {
        if self.verify {
            let report = verify_embedding(after.rotation_system(), self.circuits);
            if !report.is_ok() {
                let detail = report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
                return Err(ReduceError::Verification { case: case.to_string(), detail });
            }
        }
        self.steps.push(TraceStep {
            case: case.to_string(),
            op,
            before: before.antiface_count(),
            after: after.antiface_count(),
            faces,
            vertices,
        });
        Ok(())
    }

    fn merge_three(&mut self, e: &Embedding, case: &str) -> Step<Embedding> {
        let Some((v, faces)) = find_vertex_on_three_antifaces(e) else {
            return Ok(None);
        };
        let out = merge_three_at_vertex(e, v, faces)?;
        self.record(case, Op::MergeThree, e, &out, faces.to_vec(), vec![v])?;
        Ok(Some(out))
    }

    fn merge_certificate(
        &mut self,
        e: &Embedding,
        cert: Option<InterlacingCertificate>,
        case: &str,
    ) -> Step<Embedding> {
        let Some(cert) = cert else {
            return self.not_applicable(case, "hypotheses of the interlacing search do not hold");
        };
        cert.validate(e)?;
        let Some((b, c)) = cert.companions else {
            return self.not_applicable(case, "interlaced pair lacks distinct companion faces");
        };
        let out = merge_interlaced(e, cert.face, b, c, cert.x, cert.y)?;
        self.record(case, Op::MergeInterlaced, e, &out, vec![cert.face, b, c], vec![cert.x, cert.y])?;
        Ok(Some(out))
    }

    /// Blows up `small` using `big` at the lowest vertex of type `big/small`.
    /// Returns the new embedding and the ids of the two replacement faces.
    fn blow(&mut self, e: &Embedding, big: usize, small: usize, case: &str) -> Step<(Embedding, usize, usize)> {
        let view = LocalView::new(e)?;
        let Some(x) = view.types.ab(big, small).first().copied() else {
            return self.not_applicable(case, "faces to blow up share no vertex");
        };
        let Some(out) = self.soft(case, blow_up(e, big, small, x))? else {
            return Ok(None);
        };
        self.record(case, Op::BlowUp, e, &out.embedding, vec![big, small], vec![x])?;
        Ok(Some((out.embedding, out.faces.0, out.faces.1)))
    }

    fn big_moderate(&mut self, e: &Embedding, a: usize, b: usize, c: usize, case: &str) -> Step<Embedding> {
        let view = LocalView::new(e)?;
        let Some(cert) = self.soft(case, check_big_moderate(&view, a, b, c))? else {
            return Ok(None);
        };
        self.merge_certificate(e, cert, case)
    }

    fn dispatch(&mut self, e: &Embedding) -> Step<Embedding> {
        if let Some(out) = self.merge_three(e, "1")? {
            return Ok(Some(out));
        }
        let view = LocalView::new(e)?;
        let kg = TouchGraph::build(e)?;
        let loops = kg.loop_nodes();
        match (loops.len(), kg.star_center()) {
            (0, None) => self.case_2_1(e, &view, &kg),
            (0, Some(a)) => self.case_2_2(e, &view, a),
            (1, _) => match kg.neighbors(loops[0]).len() {
                0 => self.not_applicable("3.2", "looped touch-graph node has no neighbours"),
                1 => self.case_3_2_1(e, &kg, loops[0]),
                _ => self.case_3_2_2(e, &kg, loops[0]),
            },
            _ => self.case_3_1(e, &kg, &loops),
        }
    }

    fn case_2_1(&mut self, e: &Embedding, view: &LocalView, kg: &TouchGraph) -> Step<Embedding> {
        let Some((mut a, mut b, w)) = kg.argmax_pair() else {
            return self.not_applicable("2.1", "touch graph has no links");
        };
        if view.types.vertices(a).len() < view.types.vertices(b).len() {
            std::mem::swap(&mut a, &mut b);
        }
        let k = view.k;
        let (case, found) = if w <= k {
            ("2.1.1", check_three_neighbor_corollary(view, a))
        } else if w >= 3 * k + 4 {
            ("2.1.2", check_diamond_corollary(view, a, b))
        } else if w == 3 * k + 3 {
            if k == 0 {
                ("2.1.3", check_diamond_corollary(view, a, b))
            } else {
                ("2.1.3", bipartite_search(view, a, b))
            }
        } else {
            ("2.1.4", check_three_neighbor_corollary(view, a))
        };
        let Some(cert) = self.soft(case, found)? else {
            return Ok(None);
        };
        self.merge_certificate(e, cert, case)
    }

    fn case_2_2(&mut self, e: &Embedding, view: &LocalView, a: usize) -> Step<Embedding> {
        let types = &view.types;
        let faces = types.face_count();
        let b =
            (0..faces).filter(|&p| p != a).max_by_key(|&p| (types.ab(a, p).len(), Reverse(p))).expect("three faces");
        if types.a1(a).len() >= types.ab(a, b).len() + view.k + 3 {
            let Some(cert) = self.soft("2.2", check_three_neighbor_corollary(view, a))? else {
                return Ok(None);
            };
            return self.merge_certificate(e, cert, "2.2");
        }
        let c = (0..faces).find(|&p| p != a && p != b).expect("three faces");
        let b_arc = e.antiface(b).arcs()[0];
        let Some((e1, p, q)) = self.blow(e, a, c, "2.2")? else {
            return Ok(None);
        };
        if let Some(out) = self.merge_three(&e1, "1")? {
            return Ok(Some(out));
        }
        let kg1 = TouchGraph::build(&e1)?;
        let (loopier, other) = if kg1.loops_at(p) >= kg1.loops_at(q) { (p, q) } else { (q, p) };
        if kg1.loops_at(loopier) == 0 {
            let view1 = LocalView::new(&e1)?;
            if !kg1.loop_nodes().is_empty() || kg1.is_star() {
                return self.not_applicable("2.2", "blow-up left a loop or star elsewhere");
            }
            return self.case_2_1(&e1, &view1, &kg1);
        }
        let b1 = e1.faces().antiface_of_arc(b_arc);
        self.big_moderate(&e1, loopier, b1, other, "2.2")
    }

    fn case_3_1(&mut self, e: &Embedding, kg: &TouchGraph, loops: &[usize]) -> Step<Embedding> {
        let mut choice = None;
        'pairs: for (i, &l1) in loops.iter().enumerate() {
            for &l2 in &loops[i + 1..] {
                for (a, b) in [(l1, l2), (l2, l1)] {
                    if let Some(c) = kg.neighbors(a).into_iter().find(|&c| c != b) {
                        choice = Some((a, b, c));
                        break 'pairs;
                    }
                }
            }
        }
        let Some((a, b, c)) = choice else {
            return self.not_applicable("3.1", "no looped node has a third neighbour");
        };
        let b_arc = e.antiface(b).arcs()[0];
        let Some((e1, p, q)) = self.blow(e, a, c, "3.1")? else {
            return Ok(None);
        };
        if let Some(out) = self.merge_three(&e1, "1")? {
            return Ok(Some(out));
        }
        let b1 = e1.faces().antiface_of_arc(b_arc);
        self.big_moderate(&e1, b1, p, q, "3.1")
    }

    fn case_3_2_1(&mut self, e: &Embedding, kg: &TouchGraph, a: usize) -> Step<Embedding> {
        let b = *kg.neighbors(a).first().expect("one neighbour");
        let Some(c) = kg.neighbors(b).into_iter().find(|&c| c != a) else {
            return self.not_applicable("3.2.1", "the neighbour of the looped node has no other neighbour");
        };
        let a_arc = e.antiface(a).arcs()[0];
        let Some((e1, p, q)) = self.blow(e, b, c, "3.2.1")? else {
            return Ok(None);
        };
        if let Some(out) = self.merge_three(&e1, "1")? {
            return Ok(Some(out));
        }
        let a1 = e1.faces().antiface_of_arc(a_arc);
        self.big_moderate(&e1, a1, p, q, "3.2.1")
    }

    fn case_3_2_2(&mut self, e: &Embedding, kg: &TouchGraph, a: usize) -> Step<Embedding> {
        let b = *kg.neighbors(a).first().expect("two neighbours");
        let Some((e1, p, q)) = self.blow(e, a, b, "3.2.2")? else {
            return Ok(None);
        };
        if let Some(out) = self.merge_three(&e1, "1")? {
            return Ok(Some(out));
        }
        let kg1 = TouchGraph::build(&e1)?;
        let Some(a_star) = single_looped_hub(&kg1) else {
            return self.dispatch(&e1);
        };
        let b_star = match a_star {
            s if s == p => q,
            s if s == q => p,
            _ => return self.not_applicable("3.2.2", "loops moved to a face the blow-up did not touch"),
        };
        let Some(c) = kg1.neighbors(a_star).into_iter().find(|&c| c != b_star) else {
            return self.not_applicable("3.2.2", "no third neighbour after the first blow-up");
        };
        let b_arc = e1.antiface(b_star).arcs()[0];
        let Some((e2, r, s)) = self.blow(&e1, a_star, c, "3.2.2")? else {
            return Ok(None);
        };
        if let Some(out) = self.merge_three(&e2, "1")? {
            return Ok(Some(out));
        }
        let kg2 = TouchGraph::build(&e2)?;
        let Some(looped) = single_looped_hub(&kg2) else {
            return self.dispatch(&e2);
        };
        let other = match looped {
            x if x == r => s,
            x if x == s => r,
            _ => return self.not_applicable("3.2.2", "loops moved to a face the blow-up did not touch"),
        };
        let b2 = e2.faces().antiface_of_arc(b_arc);
        self.big_moderate(&e2, looped, other, b2, "3.2.2")
    }

    /// Generic search: any antiface `A` with an interlaced pair `x, y` such
    /// that `x` lies on some `B != A` and `y` on some `C` outside `{A, B}`.
    fn fallback(&mut self, e: &Embedding) -> Step<Embedding> {
        if let Some(out) = self.merge_three(e, "1")? {
            return Ok(Some(out));
        }
        let d = e.digraph();
        let at = e.antifaces_at();
        for a in 0..e.antiface_count() {
            let seq = e.antiface(a).vertex_sequence(d);
            let verts: BTreeSet<VertexId> = seq.iter().copied().collect();
            for &x in &verts {
                for &y in &verts {
                    if x == y || !are_interlaced(&seq, x, y) {
                        continue;
                    }
                    for &b in at[x].iter().filter(|&&b| b != a) {
                        if let Some(&c) = at[y].iter().find(|&&c| c != a && c != b) {
                            let out = merge_interlaced(e, a, b, c, x, y)?;
                            self.record("fallback", Op::MergeInterlaced, e, &out, vec![a, b, c], vec![x, y])?;
                            return Ok(Some(out));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

fn single_looped_hub(kg: &TouchGraph) -> Option<usize> {
    match kg.loop_nodes()[..] {
        [a] if kg.neighbors(a).len() >= 2 => Some(a),
        _ => None,
    }
}

/// The `|AB| = 3k + 3`, `k >= 1` case: a subgraph of minimum degree 3 in the
/// bipartite graph between `A \ B` and `AB`, then a three-neighbour search.
fn bipartite_search(view: &LocalView, a: usize, b: usize) -> Result<Option<InterlacingCertificate>, InterlaceError> {
    let left = view.types.a_minus_b(a, b);
    let right = view.types.ab(a, b);
    let ids: Vec<VertexId> = left.iter().chain(right.iter()).copied().collect();
    let mut h = SimpleGraph::new(ids.len());
    for (i, &u) in ids.iter().enumerate().take(left.len()) {
        for (j, &v) in ids.iter().enumerate().skip(left.len()) {
            if view.usg.has_edge(u, v) {
                h.add_edge(i, j);
            }
        }
    }
    let core = extract_dense_subgraph(&h, 2)?;
    let s: BTreeSet<VertexId> = core.into_iter().map(|i| ids[i]).collect();
    three_neighbor_search(view, a, &s).map(Some)
}

/// Reduces an existing embedding, keeping its profaces.
pub fn reduce_embedding(e: Embedding, opts: ReduceOptions) -> Result<Reduction, ReduceError> {
    let d = e.digraph().clone();
    let circuits = CircuitDecomposition::new(&d, e.profaces().iter().map(|f| f.arcs().to_vec()).collect())?;
    let limit = 8 * e.antiface_count().max(1);
    let mut trace = ReductionTrace::default();
    let mut e = e;
    let mut status = Status::Upper;
    while e.antiface_count() > 2 {
        let mut round = Round::new(&circuits, opts.verify_steps);
        let next = match round.dispatch(&e)? {
            Some(next) => next,
            None if opts.mode == Mode::Strict => {
                let (case, reason) = round.dead_end.unwrap_or_else(|| ("?".into(), "no case applies".into()));
                return Err(ReduceError::NoProgress { case, reason });
            }
            None => {
                round = Round::new(&circuits, opts.verify_steps);
                match round.fallback(&e)? {
                    Some(next) => next,
                    None => {
                        status = Status::Stalled;
                        break;
                    }
                }
            }
        };
        trace.steps.append(&mut round.steps);
        if trace.len() > limit {
            return Err(ReduceError::StepLimit { limit });
        }
        e = next;
    }
    Ok(Reduction { embedding: e, trace, status })
}

/// Embeds `d` with the circuits of `c` as profaces and at most two
/// antifaces (or the proved minimum for two-vertex digraphs).
pub fn reduce_to_upper_embedding(
    d: Arc<Digraph>,
    c: &CircuitDecomposition,
    opts: ReduceOptions,
) -> Result<Reduction, ReduceError> {
    d.check_eulerian()?;
    if d.vertex_count() <= 2 {
        return small_order_embedding(d, c, opts.verify_steps);
    }
    let profile = d.density_profile();
    if opts.mode == Mode::Strict && !profile.dense {
        return Err(ReduceError::NotDense(profile));
    }
    let e = embed_from_decomposition(d, c)?;
    reduce_embedding(e, opts)
}

/// Completes arc-disjoint circuits `partial` with one euler circuit per
/// nontrivial component of the remaining arcs, then reduces.
pub fn relative_upper_from_partial(
    d: Arc<Digraph>,
    partial: &[Vec<ArcId>],
    opts: ReduceOptions,
) -> Result<Reduction, ReduceError> {
    let mut used = vec![false; d.arc_count()];
    let mut circuits = Vec::with_capacity(partial.len());
    for (index, arcs) in partial.iter().enumerate() {
        let c =
            DirectedCircuit::new(&d, arcs.clone()).map_err(|reason| DigraphError::InvalidCircuit { index, reason })?;
        for &a in c.arcs() {
            if std::mem::replace(&mut used[a], true) {
                return Err(DigraphError::NotADecomposition(format!("arc {a} is used by more than one circuit")).into());
            }
        }
        circuits.push(c.arcs().to_vec());
    }
    let rest: Vec<bool> = used.iter().map(|&u| !u).collect();
    circuits.extend(euler_circuits_of_subgraph(&d, &rest)?.into_iter().map(|c| c.arcs().to_vec()));
    let c = CircuitDecomposition::new(&d, circuits)?;
    reduce_to_upper_embedding(d, &c, opts)
}

/// Orients `g` along the closed walks `circuits` and reduces; the result is a
/// face-2-colourable embedding of `g` with `circuits` as one colour class.
pub fn undirected_upper_embedding(
    g: &UndirectedGraph,
    circuits: &[Vec<EdgeId>],
    opts: ReduceOptions,
) -> Result<Reduction, ReduceError> {
    let (d, c) = eulerian_orientation(g, circuits)?;
    reduce_to_upper_embedding(Arc::new(d), &c, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotational_tournament(n: usize) -> Digraph {
        let arcs = (0..n).flat_map(|i| (1..=(n - 1) / 2).map(move |j| (i, (i + j) % n))).collect();
        Digraph::new(n, arcs).unwrap()
    }

    #[test]
    fn tournament_seven_reaches_one_antiface() {
        let d = Arc::new(rotational_tournament(7));
        let t = crate::digraph::euler_circuit(&d).unwrap();
        let c = CircuitDecomposition::new(&d, vec![t.arcs().to_vec()]).unwrap();
        let r = reduce_to_upper_embedding(d, &c, ReduceOptions::default()).unwrap();
        assert_eq!(r.embedding.antiface_count(), 1);
        assert_eq!(r.status, Status::Upper);
        assert!(r.trace.check_consistency().is_ok());
        assert_eq!(r.embedding.genus().unwrap(), 7);
    }

    #[test]
    fn strict_rejects_sparse_input() {
        let d = Arc::new(Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap());
        let c = CircuitDecomposition::new(&d, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            reduce_to_upper_embedding(d.clone(), &c, ReduceOptions::default()),
            Err(ReduceError::NotDense(_))
        ));
        let r = reduce_to_upper_embedding(d, &c, ReduceOptions::new(Mode::BestEffort)).unwrap();
        assert_eq!(r.embedding.antiface_count(), 1);
    }

    #[test]
    fn partial_circuits_are_completed() {
        let d = Arc::new(rotational_tournament(7));
        let r = relative_upper_from_partial(d.clone(), &[], ReduceOptions::default()).unwrap();
        assert_eq!(r.embedding.proface_count(), 1);
        assert_eq!(r.embedding.antiface_count(), 1);
        let ring = vec![0, 3, 6, 9, 12, 15, 18];
        let one =
            relative_upper_from_partial(d.clone(), std::slice::from_ref(&ring), ReduceOptions::default()).unwrap();
        assert_eq!(one.embedding.proface_count(), 2);
        let overlapping = vec![ring.clone(), ring];
        assert!(relative_upper_from_partial(d, &overlapping, ReduceOptions::default()).is_err());
    }
}
