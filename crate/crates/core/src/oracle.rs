//! Exhaustive enumeration of the embeddings whose profaces are a fixed
//! circuit decomposition.
//!
//! At a vertex with incoming half-arcs `h_0 < ... < h_{d-1}` every such
//! rotation is a cyclic arrangement of the pairs `(fw(h_i), h_i)`. Fixing the
//! pair of `h_0` first leaves `(d-1)!` arrangements per vertex.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{CircuitDecomposition, Digraph, HalfArc};
use crate::embedding::Embedding;

pub const DEFAULT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{states} embeddings exceed the limit of {limit}")]
    TooManyStates { states: String, limit: u64 },
    #[error("circuit decomposition does not fit the digraph")]
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub states: u64,
    /// Antiface count -> number of embeddings.
    pub distribution: BTreeMap<usize, u64>,
    pub min: usize,
    pub max: usize,
    /// Rotations of the first embedding found with `min` antifaces.
    pub argmin: Vec<Vec<HalfArc>>,
}

/// Exact number of compatible embeddings, `prod_v (indeg(v) - 1)!`, or
/// `None` past `u128`.
pub fn state_count(d: &Digraph) -> Option<u128> {
    let mut total: u128 = 1;
    for v in 0..d.vertex_count() {
        for f in 2..d.indegree(v).max(1) {
            total = total.checked_mul(f as u128)?;
        }
    }
    Some(total)
}

/// Calls `visit(rotations, antiface_count)` once per compatible embedding.
pub fn for_each_relative_embedding<F>(
    d: &Digraph,
    c: &CircuitDecomposition,
    limit: u64,
    mut visit: F,
) -> Result<u64, OracleError>
where
    F: FnMut(&[Vec<HalfArc>], usize),
{
    let states = state_count(d);
    match states {
        Some(s) if s <= limit as u128 => {}
        _ => {
            let states = states.map_or_else(|| "more than 2^128".to_string(), |s| s.to_string());
            return Err(OracleError::TooManyStates { states, limit });
        }
    }
    let covered: usize = c.circuits().iter().map(|w| w.len()).sum();
    if covered != d.arc_count() {
        return Err(OracleError::Mismatch);
    }
    let n = d.vertex_count();
    let ins: Vec<Vec<HalfArc>> = (0..n).map(|v| d.in_half_arcs(v).to_vec()).collect();
    let fw: Vec<HalfArc> = (0..d.arc_count()).map(|a| c.fw(HalfArc::incoming(a))).collect();
    // perms[v] orders the pair indices 1..d at v; pair 0 always comes first.
    let mut perms: Vec<Vec<usize>> = ins.iter().map(|h| (1..h.len()).collect()).collect();
    let mut rotations: Vec<Vec<HalfArc>> = vec![Vec::new(); n];
    let mut next_arc = vec![0usize; d.arc_count()];
    let mut seen = vec![false; d.arc_count()];
    let mut count = 0u64;
    loop {
        for v in 0..n {
            let rot = &mut rotations[v];
            rot.clear();
            if ins[v].is_empty() {
                continue;
            }
            let order = std::iter::once(0).chain(perms[v].iter().copied());
            let hs: Vec<HalfArc> = order.map(|i| ins[v][i]).collect();
            for (i, &h) in hs.iter().enumerate() {
                rot.push(fw[h.arc()]);
                rot.push(h);
                next_arc[h.arc()] = fw[hs[(i + 1) % hs.len()].arc()].arc();
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut faces = 0;
        for start in 0..next_arc.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                a = next_arc[a];
            }
        }
        visit(&rotations, faces);
        count += 1;
        // Odometer over the vertices, each digit a permutation.
        let mut v = 0;
        while v < n && !next_permutation(&mut perms[v]) {
            v += 1;
        }
        if v == n {
            break;
        }
    }
    Ok(count)
}

/// Lexicographic successor in place; on the last permutation, resets to the
/// first and returns false.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        p.reverse();
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

pub fn enumerate_relative_embeddings(
    d: &Digraph,
    c: &CircuitDecomposition,
    limit: u64,
) -> Result<OracleReport, OracleError> {
    let mut distribution = BTreeMap::new();
    let mut argmin: Option<(usize, Vec<Vec<HalfArc>>)> = None;
    let states = for_each_relative_embedding(d, c, limit, |rot, faces| {
        *distribution.entry(faces).or_insert(0u64) += 1;
        if argmin.as_ref().is_none_or(|(m, _)| faces < *m) {
            argmin = Some((faces, rot.to_vec()));
        }
    })?;
    let min = *distribution.keys().next().expect("at least one embedding");
    let max = *distribution.keys().next_back().expect("at least one embedding");
    Ok(OracleReport { states, distribution, min, max, argmin: argmin.map(|(_, r)| r).unwrap_or_default() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub pass: bool,
    pub antifaces: usize,
    pub minimum: usize,
}

/// Passes iff `e` has as few antifaces as any embedding with its profaces.
pub fn certify_maximal(e: &Embedding, limit: u64) -> Result<Certification, OracleError> {
    let d: &Arc<Digraph> = e.digraph();
    let c = CircuitDecomposition::new(d, e.profaces().iter().map(|f| f.arcs().to_vec()).collect())
        .map_err(|_| OracleError::Mismatch)?;
    let report = enumerate_relative_embeddings(d, &c, limit)?;
    Ok(Certification { pass: e.antiface_count() == report.min, antifaces: e.antiface_count(), minimum: report.min })
}
