//! Digraphs on one or two vertices.
//!
//! Without a 2-edge-cut, three-face merges followed by at most one
//! interlaced merge reach one or two antifaces. With a 2-edge-cut (exactly
//! one arc `e: v1 -> v2` and one arc `f: v2 -> v1`), the cut is contracted
//! into a loop on each side: at `v1` the loop leaves on `e`'s tail half-arc
//! and returns on `f`'s head half-arc, and symmetrically at `v2`. Each side is
//! embedded on its own and the two rotations are used unchanged for `D`.

use std::sync::Arc;

use crate::digraph::{ArcId, CircuitDecomposition, Digraph, HalfArc, VertexId};
use crate::embedding::{embed_from_decomposition, verify_embedding, Embedding};
use crate::interlace::find_vertex_on_three_antifaces;
use crate::surgery::{merge_interlaced, merge_three_at_vertex};

use super::{Op, ReduceError, Reduction, ReductionTrace, Status, TraceStep};

pub fn small_order_embedding(
    d: Arc<Digraph>,
    c: &CircuitDecomposition,
    verify: bool,
) -> Result<Reduction, ReduceError> {
    let n = d.vertex_count();
    if n > 2 {
        return Err(ReduceError::TooManyVertices { n });
    }
    d.check_eulerian()?;
    let between: Vec<ArcId> = (0..d.arc_count()).filter(|&a| !d.is_loop(a)).collect();
    let reduction = if n == 2 && between.len() == 2 { cut_reduction(&d, c, &between)? } else { merge_down(&d, c)? };
    if verify {
        let report = verify_embedding(reduction.embedding.rotation_system(), c);
        if !report.is_ok() {
            let detail = report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
            return Err(ReduceError::Verification { case: "small".into(), detail });
        }
    }
    Ok(reduction)
}

/// Antiface count guaranteed by the cut construction:
/// `((α1 + γ1) mod 2) + ((α2 + γ2) mod 2) + 1`, where `α_i` counts loops at
/// `v_i` and `γ_i` the circuits touching only `v_i`.
pub fn cut_formula(d: &Digraph, c: &CircuitDecomposition) -> usize {
    (0..2)
        .map(|v| {
            let alpha = (0..d.arc_count()).filter(|&a| d.is_loop(a) && d.tail(a) == v).count();
            let gamma =
                c.circuits().iter().filter(|w| w.arcs().iter().all(|&a| d.tail(a) == v && d.head(a) == v)).count();
            (alpha + gamma) % 2
        })
        .sum::<usize>()
        + 1
}

fn step(case: &str, op: Op, before: usize, after: usize, faces: Vec<usize>, vertices: Vec<VertexId>) -> TraceStep {
    TraceStep { case: case.into(), op, before, after, faces, vertices }
}

fn merge_down(d: &Arc<Digraph>, c: &CircuitDecomposition) -> Result<Reduction, ReduceError> {
    let mut e = embed_from_decomposition(d.clone(), c)?;
    let mut trace = ReductionTrace::default();
    while let Some((v, faces)) = find_vertex_on_three_antifaces(&e) {
        let out = merge_three_at_vertex(&e, v, faces)?;
        trace.push(step("small", Op::MergeThree, e.antiface_count(), out.antiface_count(), faces.to_vec(), vec![v]));
        e = out;
    }
    if e.antiface_count() >= 3 {
        // Locally irreducible with two vertices: one face A on both, and one
        // face on each vertex alone.
        let at = e.antifaces_at();
        let a = *at[0].iter().find(|f| at[1].contains(f)).expect("some antiface visits both vertices");
        let b = *at[0].iter().find(|&&f| f != a).expect("a face only at v1");
        let cc = *at[1].iter().find(|&&f| f != a).expect("a face only at v2");
        let out = merge_interlaced(&e, a, b, cc, 0, 1)?;
        trace.push(step(
            "small",
            Op::MergeInterlaced,
            e.antiface_count(),
            out.antiface_count(),
            vec![a, b, cc],
            vec![0, 1],
        ));
        e = out;
    }
    Ok(Reduction { embedding: e, trace, status: Status::Upper })
}

/// One side of the cut: a one-vertex digraph of the loops at `v` plus the
/// contracted loop, and how its half-arcs map back into `D`.
struct Side {
    digraph: Arc<Digraph>,
    circuits: Vec<Vec<ArcId>>,
    half_arc_map: Vec<HalfArc>,
}

fn side(
    d: &Digraph,
    c: &CircuitDecomposition,
    v: VertexId,
    out_arc: ArcId,
    in_arc: ArcId,
) -> Result<Side, ReduceError> {
    let loops: Vec<ArcId> = (0..d.arc_count()).filter(|&a| d.is_loop(a) && d.tail(a) == v).collect();
    let contracted = loops.len();
    let mut local = vec![usize::MAX; d.arc_count()];
    let mut half_arc_map = Vec::with_capacity(2 * (contracted + 1));
    for (j, &a) in loops.iter().enumerate() {
        local[a] = j;
        half_arc_map.push(HalfArc::outgoing(a));
        half_arc_map.push(HalfArc::incoming(a));
    }
    half_arc_map.push(HalfArc::outgoing(out_arc));
    half_arc_map.push(HalfArc::incoming(in_arc));

    let mut circuits = Vec::new();
    for w in c.circuits() {
        let arcs = w.arcs();
        if let Some(p) = arcs.iter().position(|&a| a == out_arc) {
            // Starting at the cut arc leaving v, the walk is: cut arc, loops on
            // the far side, the cut arc returning, loops at v.
            let q = arcs.iter().position(|&a| a == in_arc).expect("both cut arcs lie on one circuit");
            let t = arcs.len();
            let mut at_v = vec![contracted];
            let mut i = (q + 1) % t;
            while i != p {
                at_v.push(local[arcs[i]]);
                i = (i + 1) % t;
            }
            circuits.push(at_v);
        } else if arcs.iter().all(|&a| local[a] != usize::MAX) {
            circuits.push(arcs.iter().map(|&a| local[a]).collect());
        }
    }
    let digraph = Arc::new(Digraph::new(1, vec![(0, 0); contracted + 1])?);
    Ok(Side { digraph, circuits, half_arc_map })
}

fn cut_reduction(d: &Arc<Digraph>, c: &CircuitDecomposition, between: &[ArcId]) -> Result<Reduction, ReduceError> {
    let (e_arc, f_arc) = if d.tail(between[0]) == 0 { (between[0], between[1]) } else { (between[1], between[0]) };
    let mut rotations = Vec::with_capacity(2);
    for (v, out_arc, in_arc) in [(0, e_arc, f_arc), (1, f_arc, e_arc)] {
        let s = side(d, c, v, out_arc, in_arc)?;
        let sc = CircuitDecomposition::new(&s.digraph, s.circuits)?;
        let part = merge_down(&s.digraph, &sc)?;
        rotations.push(part.embedding.rotations()[0].iter().map(|h| s.half_arc_map[h.0]).collect());
    }
    let before = embed_from_decomposition(d.clone(), c)?.antiface_count();
    let e = Embedding::from_rotations(d.clone(), rotations)?;
    let after = e.antiface_count();
    let mut trace = ReductionTrace::default();
    trace.push(step("small", Op::CutReduction, before, after, Vec::new(), vec![0, 1]));
    let status = if after <= 2 { Status::Upper } else { Status::Minimal };
    Ok(Reduction { embedding: e, trace, status })
}
