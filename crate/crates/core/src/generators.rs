//! Deterministic instance families: rotational tournaments, `K_n` minus a
//! perfect matching, Steiner triple systems and seeded random dense digraphs.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{ArcId, CircuitDecomposition, Digraph, DigraphError, UndirectedGraph, VertexId};
use crate::embedding::Embedding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{family} needs {need}, got n = {n}")]
    BadOrder { family: &'static str, need: &'static str, n: usize },
    #[error("n = {n} is below 5k + 7 = {bound}")]
    TooSparse { n: usize, bound: usize },
    #[error("no graph of maximum degree {k} leaves every degree of K_{n} even")]
    Parity { n: usize, k: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// Arcs `i -> i + j (mod n)` for `j = 1..=(n-1)/2`, ordered by `i` then `j`.
pub fn gen_rotational_tournament(n: usize) -> Result<Digraph, GenError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(GenError::BadOrder { family: "rotational tournament", need: "odd n >= 3", n });
    }
    let arcs = (0..n).flat_map(|i| (1..=(n - 1) / 2).map(move |j| (i, (i + j) % n))).collect();
    Ok(Digraph::new(n, arcs)?)
}

/// `K_n` minus the matching `{i, i + n/2}`, oriented along an euler circuit.
pub fn gen_kn_minus_pm(n: usize) -> Result<Digraph, GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenError::BadOrder { family: "K_n minus a perfect matching", need: "even n >= 4", n });
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| j != i + n / 2).collect();
    Ok(UndirectedGraph::new(n, edges)?.euler_orientation()?)
}

/// Steiner triple system on `n` points, each triple a directed triangle.
/// Circuit `j` is arcs `3j, 3j+1, 3j+2`.
pub fn gen_sts(n: usize) -> Result<(Digraph, CircuitDecomposition), GenError> {
    let triples = match n % 6 {
        3 => bose(n),
        1 if n >= 7 => skolem(n),
        _ => return Err(GenError::BadOrder { family: "Steiner triple system", need: "n = 1 or 3 (mod 6), n >= 3", n }),
    };
    let arcs = triples.iter().flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)]).collect();
    let d = Digraph::new(n, arcs)?;
    let circuits = (0..triples.len()).map(|j| vec![3 * j, 3 * j + 1, 3 * j + 2]).collect();
    let c = CircuitDecomposition::new(&d, circuits)?;
    Ok((d, c))
}

/// Bose: points `(x, i)` of `Z_v x Z_3` with `x o y = (x + y)(v + 1)/2`.
fn bose(n: usize) -> Vec<[VertexId; 3]> {
    let v = n / 3;
    let p = |x: usize, i: usize| x + (i % 3) * v;
    let op = |x: usize, y: usize| (x + y) * v.div_ceil(2) % v;
    let mut t: Vec<[VertexId; 3]> = (0..v).map(|x| [p(x, 0), p(x, 1), p(x, 2)]).collect();
    for x in 0..v {
        for y in x + 1..v {
            for i in 0..3 {
                t.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    t
}

/// Skolem: points `(x, i)` of `Z_2t x Z_3` plus `inf = n - 1`, with the
/// half-idempotent `x o y = f(x + y mod 2t)`, `f(2i) = i`, `f(2i+1) = t + i`.
fn skolem(n: usize) -> Vec<[VertexId; 3]> {
    let t = (n - 1) / 6;
    let m = 2 * t;
    let inf = n - 1;
    let p = |x: usize, i: usize| x + (i % 3) * m;
    let f = |s: usize| if s.is_multiple_of(2) { s / 2 } else { t + s / 2 };
    let op = |x: usize, y: usize| f((x + y) % m);
    let mut out: Vec<[VertexId; 3]> = (0..t).map(|x| [p(x, 0), p(x, 1), p(x, 2)]).collect();
    for x in 0..t {
        for i in 0..3 {
            out.push([inf, p(x + t, i), p(x, i + 1)]);
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                out.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    out
}

/// `K_n` minus a random graph `R` of maximum degree at most `k_target`, with
/// `n - 1 - deg_R(v)` even everywhere, oriented along an euler circuit.
/// For even `n`, `R` starts as a random perfect matching; random cycles
/// through vertices with spare degree are then added.
pub fn gen_random_dense_eulerian(n: usize, k_target: usize, seed: u64) -> Result<Digraph, GenError> {
    let bound = 5 * k_target + 7;
    if n < bound {
        return Err(GenError::TooSparse { n, bound });
    }
    if n.is_multiple_of(2) && k_target == 0 {
        return Err(GenError::Parity { n, k: k_target });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut removed = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    if n.is_multiple_of(2) {
        let mut order: Vec<VertexId> = (0..n).collect();
        order.shuffle(&mut rng);
        for pair in order.chunks(2) {
            removed[pair[0]][pair[1]] = true;
            removed[pair[1]][pair[0]] = true;
            deg[pair[0]] += 1;
            deg[pair[1]] += 1;
        }
    }
    let attempts = rng.gen_range(0..=n);
    for _ in 0..attempts {
        let mut spare: Vec<VertexId> = (0..n).filter(|&v| deg[v] + 2 <= k_target).collect();
        if spare.len() < 3 {
            break;
        }
        spare.shuffle(&mut rng);
        let len = rng.gen_range(3..=spare.len());
        let cycle = &spare[..len];
        let fits = (0..len).all(|i| !removed[cycle[i]][cycle[(i + 1) % len]]);
        if !fits {
            continue;
        }
        for i in 0..len {
            let (a, b) = (cycle[i], cycle[(i + 1) % len]);
            removed[a][b] = true;
            removed[b][a] = true;
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !removed[i][j]).collect();
    Ok(UndirectedGraph::new(n, edges)?.euler_orientation()?)
}

/// Decomposition induced by a uniformly random transition at every vertex.
pub fn random_circuit_decomposition<R: Rng>(d: &Digraph, rng: &mut R) -> CircuitDecomposition {
    let mut succ = vec![0; d.arc_count()];
    for v in 0..d.vertex_count() {
        let mut outs: Vec<ArcId> = d.out_half_arcs(v).iter().map(|h| h.arc()).collect();
        outs.shuffle(rng);
        for (h, &next) in d.in_half_arcs(v).iter().zip(&outs) {
            succ[h.arc()] = next;
        }
    }
    CircuitDecomposition::from_successors(d, &succ).expect("a transition system is a decomposition")
}

/// A uniformly random embedding whose profaces are the circuits of `c`.
pub fn random_relative_embedding<R: Rng>(d: Arc<Digraph>, c: &CircuitDecomposition, rng: &mut R) -> Embedding {
    let rotations = (0..d.vertex_count())
        .map(|v| {
            let mut ins = d.in_half_arcs(v).to_vec();
            ins.shuffle(rng);
            ins.iter().flat_map(|&h| [c.fw(h), h]).collect()
        })
        .collect();
    Embedding::from_rotations(d, rotations).expect("paired rotations are alternating")
}

/// Splits an euler circuit at its first repeated vertex into two circuits.
pub fn split_euler_circuit(d: &Digraph) -> Result<CircuitDecomposition, GenError> {
    let t = crate::digraph::euler_circuit(d)?;
    let arcs = t.arcs();
    let mut first_at = vec![None; d.vertex_count()];
    for (j, &a) in arcs.iter().enumerate() {
        let v = d.tail(a);
        if let Some(i) = first_at[v] {
            let inner = arcs[i..j].to_vec();
            let outer = arcs[j..].iter().chain(&arcs[..i]).copied().collect();
            return Ok(CircuitDecomposition::new(d, vec![inner, outer])?);
        }
        first_at[v] = Some(j);
    }
    Ok(CircuitDecomposition::new(d, vec![arcs.to_vec()])?)
}
