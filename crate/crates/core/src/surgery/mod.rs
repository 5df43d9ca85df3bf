//! Antiface surgery. Every operation rewrites the rotation at one vertex by
//! a three-segment swap, which fixes all profaces and permutes the antiface
//! successors of three incoming half-arcs cyclically.

pub mod division;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::digraph::{ArcId, HalfArc, VertexId};
use crate::embedding::{Embedding, EmbeddingError};
use crate::interlace::{interlacing_positions, InterlaceError, TypeTable, VertexType};
use division::{division_search, DivisionError, PointColor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("antifaces {0:?} are not distinct")]
    NotDistinct(Vec<usize>),
    #[error("antiface {0} does not exist")]
    NoSuchFace(usize),
    #[error("antiface {face} does not visit vertex {vertex}")]
    FaceNotAtVertex { face: usize, vertex: VertexId },
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("vertices {x} and {y} are not interlaced on antiface {face}")]
    NotInterlaced { face: usize, x: VertexId, y: VertexId },
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error("postcondition violated (implementation bug): {0}")]
    Postcondition(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Interlace(#[from] InterlaceError),
    #[error(transparent)]
    Division(#[from] DivisionError),
}

/// Cuts a rotation just after each of three incoming half-arcs into
/// `seg1 seg2 seg3` (in rotation order) and returns `seg1 seg3 seg2`.
pub fn three_segment_swap(rotation: &[HalfArc], cuts: [HalfArc; 3]) -> Vec<HalfArc> {
    let mut c: Vec<usize> = cuts
        .iter()
        .map(|h| rotation.iter().position(|g| g == h).expect("cut half-arc lies in the rotation") + 1)
        .collect();
    c.sort_unstable();
    let (c1, c2, c3) = (c[0], c[1], c[2]);
    let seg1 = &rotation[c1..c2];
    let seg2 = &rotation[c2..c3];
    let mut out = Vec::with_capacity(rotation.len());
    out.extend_from_slice(seg1);
    out.extend_from_slice(&rotation[c3..]);
    out.extend_from_slice(&rotation[..c1]);
    out.extend_from_slice(seg2);
    out
}

fn check_face(e: &Embedding, f: usize) -> Result<(), SurgeryError> {
    if f < e.antiface_count() {
        Ok(())
    } else {
        Err(SurgeryError::NoSuchFace(f))
    }
}

/// Lowest incoming half-arc on which antiface `f` enters `v`.
fn lowest_entry(e: &Embedding, f: usize, v: VertexId) -> Result<HalfArc, SurgeryError> {
    e.antiface(f)
        .visits(e.digraph(), v)
        .into_iter()
        .map(|(_, h)| h)
        .min()
        .ok_or(SurgeryError::FaceNotAtVertex { face: f, vertex: v })
}

fn antiface_set(e: &Embedding) -> BTreeSet<Vec<ArcId>> {
    e.antifaces().iter().map(|f| f.arcs().to_vec()).collect()
}

/// Checks that profaces are equal, that the antiface count moved by `delta`,
/// and that every antiface not listed in `touched` survives unchanged.
pub fn check_surgery(
    before: &Embedding,
    after: &Embedding,
    delta: isize,
    touched: &[usize],
) -> Result<(), SurgeryError> {
    let post = |why: String| Err(SurgeryError::Postcondition(why));
    if before.profaces() != after.profaces() {
        return post("profaces changed".into());
    }
    let got = after.antiface_count() as isize - before.antiface_count() as isize;
    if got != delta {
        return post(format!("antiface count changed by {got}, expected {delta}"));
    }
    let now = antiface_set(after);
    for (i, f) in before.antifaces().iter().enumerate() {
        if !touched.contains(&i) && !now.contains(f.arcs()) {
            return post(format!("untouched antiface {i} was altered"));
        }
    }
    let parity = (before.digraph().vertex_count() + before.digraph().arc_count() + before.proface_count()) % 2;
    if after.antiface_count() % 2 != parity {
        return post("antiface parity broken".into());
    }
    Ok(())
}

fn debug_check(before: &Embedding, after: &Embedding, delta: isize, touched: &[usize]) -> Result<(), SurgeryError> {
    if cfg!(debug_assertions) {
        check_surgery(before, after, delta, touched)
    } else {
        Ok(())
    }
}

/// Merges three distinct antifaces through `v` into one.
pub fn merge_three_at_vertex(e: &Embedding, v: VertexId, faces: [usize; 3]) -> Result<Embedding, SurgeryError> {
    let [a, b, c] = faces;
    if a == b || b == c || a == c {
        return Err(SurgeryError::NotDistinct(faces.to_vec()));
    }
    for f in faces {
        check_face(e, f)?;
    }
    let cuts = [lowest_entry(e, a, v)?, lowest_entry(e, b, v)?, lowest_entry(e, c, v)?];
    let out = e.with_rotation(v, three_segment_swap(e.rotations()[v].as_slice(), cuts))?;
    debug_check(e, &out, -2, &faces)?;
    Ok(out)
}

/// Which part of a split antiface `A = A1·A2` stayed a face of its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitPart {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitOutcome {
    pub embedding: Embedding,
    /// The part of `A` that became a separate antiface; the other part was
    /// joined with `B`.
    pub separate: SplitPart,
    /// Antiface id of the separate part in the new embedding.
    pub separate_face: usize,
    /// Antiface id of the part joined with `B`.
    pub merged_face: usize,
}

/// Splits antiface `a` at walk positions `p1 != p2` (both visits of the same
/// vertex `v`) into `A1 = a[p1..p2]` and `A2 = a[p2..p1]`, then joins one of
/// them with antiface `b` through `v`. Which part joins is reported, not chosen.
pub fn split_swap(e: &Embedding, a: usize, p1: usize, p2: usize, b: usize) -> Result<SplitOutcome, SurgeryError> {
    check_face(e, a)?;
    check_face(e, b)?;
    if a == b {
        return Err(SurgeryError::NotDistinct(vec![a, b]));
    }
    let d = e.digraph();
    let fa = e.antiface(a);
    if p1 == p2 || p1 >= fa.len() || p2 >= fa.len() {
        return Err(SurgeryError::InvalidSplit(format!("positions {p1}, {p2} on a walk of length {}", fa.len())));
    }
    let v = d.tail(fa.arcs()[p1]);
    if d.tail(fa.arcs()[p2]) != v {
        return Err(SurgeryError::InvalidSplit(format!("positions {p1} and {p2} visit different vertices")));
    }
    let cuts = [fa.entry_at(p1), fa.entry_at(p2), lowest_entry(e, b, v)?];
    let out = e.with_rotation(v, three_segment_swap(&e.rotations()[v], cuts))?;
    debug_check(e, &out, 0, &[a, b])?;

    let part1 = fa.subwalk(p1, p2);
    let part2 = fa.subwalk(p2, p1);
    let face1 = out.faces().antiface_of_arc(part1[0]);
    let face2 = out.faces().antiface_of_arc(part2[0]);
    let is_exactly = |f: usize, arcs: &[ArcId]| {
        let mut x = out.antiface(f).arcs().to_vec();
        let mut y = arcs.to_vec();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    };
    let (separate, separate_face, merged_face) = if is_exactly(face1, &part1) {
        (SplitPart::First, face1, face2)
    } else if is_exactly(face2, &part2) {
        (SplitPart::Second, face2, face1)
    } else {
        return Err(SurgeryError::Postcondition("neither part of the split stayed separate".into()));
    };
    Ok(SplitOutcome { embedding: out, separate, separate_face, merged_face })
}

/// Merges antifaces `a`, `b`, `c` into one, given `x` on `b`, `y` on `c`
/// and `x`, `y` interlaced on `a`: split `a` at two visits of `x` and join a
/// part with `b`, then merge the three faces now through `y`.
pub fn merge_interlaced(
    e: &Embedding,
    a: usize,
    b: usize,
    c: usize,
    x: VertexId,
    y: VertexId,
) -> Result<Embedding, SurgeryError> {
    for f in [a, b, c] {
        check_face(e, f)?;
    }
    if a == b || b == c || a == c {
        return Err(SurgeryError::NotDistinct(vec![a, b, c]));
    }
    let d = e.digraph().clone();
    if x == y {
        return Err(SurgeryError::NotInterlaced { face: a, x, y });
    }
    if !e.antiface(b).contains_vertex(&d, x) {
        return Err(SurgeryError::FaceNotAtVertex { face: b, vertex: x });
    }
    if !e.antiface(c).contains_vertex(&d, y) {
        return Err(SurgeryError::FaceNotAtVertex { face: c, vertex: y });
    }
    let seq = e.antiface(a).vertex_sequence(&d);
    let [p1, _, p2, _] = interlacing_positions(&seq, x, y).ok_or(SurgeryError::NotInterlaced { face: a, x, y })?;
    let c_arc = e.antiface(c).arcs()[0];
    let split = split_swap(e, a, p1, p2, b)?;
    let mid = &split.embedding;
    let c_now = mid.faces().antiface_of_arc(c_arc);
    let out = merge_three_at_vertex(mid, y, [split.separate_face, split.merged_face, c_now])?;
    debug_check(e, &out, -2, &[a, b, c])?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpOutcome {
    pub embedding: Embedding,
    /// False when the size condition already held and nothing was changed.
    pub changed: bool,
    /// Ids of the two antifaces replacing `A` and `B` (the separate part of
    /// `A` first). Equal to the old ids when unchanged.
    pub faces: (usize, usize),
}

/// Enlarges the smaller of two antifaces `a`, `b` sharing a vertex `x` of type
/// `AB`, using the visits of `x` on `a` as split points. Requires a locally
/// irreducible embedding, `|V(A)| >= 5` and `n >= k + 3`.
pub fn blow_up(e: &Embedding, a: usize, b: usize, x: VertexId) -> Result<BlowUpOutcome, SurgeryError> {
    check_face(e, a)?;
    check_face(e, b)?;
    if a == b {
        return Err(SurgeryError::NotDistinct(vec![a, b]));
    }
    let d = e.digraph().clone();
    let types = TypeTable::new(e)?;
    let profile = d.density_profile();
    let (n, k) = (profile.n, profile.k);
    if types.vertex_type(x) != VertexType::Pair(a.min(b), a.max(b)) {
        return Err(SurgeryError::Precondition(format!("vertex {x} is not of type {a}{b}")));
    }
    let size_a = types.vertices(a).len();
    let size_b = types.vertices(b).len();
    if size_a < 5 {
        return Err(SurgeryError::Precondition(format!("|V(A)| = {size_a} < 5")));
    }
    if n < k + 3 {
        return Err(SurgeryError::Precondition(format!("n = {n} < k + 3 = {}", k + 3)));
    }

    let seq = e.antiface(a).vertex_sequence(&d);
    let t = seq.len();
    let mut colors = vec![PointColor::Uncolored; t];
    let mut white_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..t {
        if seq[i] == x {
            colors[i] = PointColor::Black;
        }
    }
    for i in 0..t {
        let y = seq[i];
        let next_to_x = seq[(i + t - 1) % t] == x || seq[(i + 1) % t] == x;
        if y != x && next_to_x && white_of[y].is_none() {
            white_of[y] = Some(i);
            colors[i] = PointColor::White;
        }
    }
    let y_count = white_of.iter().flatten().count();
    let mut reds = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..t {
        let z = seq[i];
        if z != x && white_of[z].is_none() && !seen[z] {
            seen[z] = true;
            colors[i] = PointColor::Red;
            reds.push(i);
        }
    }
    let z_count = reds.len();

    let ell = if y_count > z_count {
        size_a - 1
    } else {
        if 2 * size_b + 1 >= n - k {
            return Ok(BlowUpOutcome { embedding: e.clone(), changed: false, faces: (a, b) });
        }
        let keep = y_count - 1;
        for &i in reds.iter().rev().take(z_count - keep) {
            colors[i] = PointColor::Uncolored;
        }
        2 * y_count - 1
    };

    let div = division_search(&colors, 2, ell)?;
    let split = split_swap(e, a, div.first, div.second, b)?;
    let out = split.embedding;
    let (fa, fb) = (split.separate_face, split.merged_face);
    if cfg!(debug_assertions) {
        let va = out.antiface(fa).vertex_set(&d);
        let vb = out.antiface(fb).vertex_set(&d);
        let bound2 = (size_a - 2).min(n - k - 1);
        if 2 * va.len() < bound2 || 2 * vb.len() < bound2 {
            return Err(SurgeryError::Postcondition(format!(
                "blow-up produced faces with {} and {} vertices, below {bound2}/2",
                va.len(),
                vb.len()
            )));
        }
        if !va.contains(&x) || !vb.contains(&x) {
            return Err(SurgeryError::Postcondition("x lost from a new face".into()));
        }
        let old: BTreeSet<_> = types.vertices(a).union(types.vertices(b)).copied().collect();
        let new: BTreeSet<_> = va.union(&vb).copied().collect();
        if old != new {
            return Err(SurgeryError::Postcondition("vertex union of the two faces changed".into()));
        }
    }
    Ok(BlowUpOutcome { embedding: out, changed: true, faces: (fa, fb) })
}
