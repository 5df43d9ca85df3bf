//! Fixtures shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use antiface::surgery::division::PointColor;
use std::sync::Arc;

use antiface::{random_circuit_decomposition, random_relative_embedding, CircuitDecomposition, Digraph, Embedding};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every connected eulerian digraph on at most two vertices with at most
/// `max_arcs` arcs, up to the order of parallel arcs.
pub fn small_digraphs(max_arcs: usize) -> Vec<Digraph> {
    let mut out = Vec::new();
    for loops in 1..=max_arcs {
        out.push(Digraph::new(1, vec![(0, 0); loops]).unwrap());
    }
    for p in 1..=max_arcs / 2 {
        for a1 in 0..=max_arcs - 2 * p {
            for a2 in 0..=max_arcs - 2 * p - a1 {
                let mut arcs = vec![(0, 0); a1];
                arcs.extend(vec![(1, 1); a2]);
                for _ in 0..p {
                    arcs.push((0, 1));
                    arcs.push((1, 0));
                }
                out.push(Digraph::new(2, arcs).unwrap());
            }
        }
    }
    out
}

/// All transition systems: one successor bijection per vertex.
pub fn all_decompositions(d: &Digraph) -> Vec<CircuitDecomposition> {
    let mut succs = vec![vec![usize::MAX; d.arc_count()]];
    for v in 0..d.vertex_count() {
        let ins: Vec<usize> = d.in_half_arcs(v).iter().map(|h| h.arc()).collect();
        let outs: Vec<usize> = d.out_half_arcs(v).iter().map(|h| h.arc()).collect();
        let mut next = Vec::new();
        for s in &succs {
            for perm in permutations(&outs) {
                let mut s = s.clone();
                for (&i, &o) in ins.iter().zip(&perm) {
                    s[i] = o;
                }
                next.push(s);
            }
        }
        succs = next;
    }
    succs.iter().map(|s| CircuitDecomposition::from_successors(d, s).unwrap()).collect()
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Recounts white and red points strictly between two positions, forward.
pub fn recount(points: &[PointColor], i: usize, j: usize) -> usize {
    let t = points.len();
    let steps = (j + t - i) % t;
    (1..steps).filter(|s| matches!(points[(i + s) % t], PointColor::White | PointColor::Red)).count()
}

/// A random coloured cycle meeting every hypothesis of the search.
pub fn division_instance(seed: u64) -> (Vec<PointColor>, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = rng.gen_range(1..=3);
        let blacks = rng.gen_range(2..=8);
        let mut points = Vec::new();
        for _ in 0..blacks {
            points.push(PointColor::Black);
            let mut gap = vec![PointColor::White; rng.gen_range(0..=m)];
            gap.extend(vec![PointColor::Red; rng.gen_range(0..=m)]);
            gap.extend(vec![PointColor::Uncolored; rng.gen_range(0..=1)]);
            gap.shuffle(&mut rng);
            points.extend(gap);
        }
        let white = points.iter().filter(|&&c| c == PointColor::White).count();
        let red = points.iter().filter(|&&c| c == PointColor::Red).count();
        let ell = white + red;
        if white <= red || ell < 2 * m {
            continue;
        }
        let p_twice = rng.gen_range(2 * m..=2 * (ell - m));
        let shift = rng.gen_range(0..points.len());
        points.rotate_left(shift);
        return (points, m, p_twice);
    }
}

/// A random eulerian digraph on `n` vertices: a spanning cycle plus random
/// cycles, with a random decomposition and a random compatible embedding.
pub fn random_embedding(seed: u64) -> Embedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=7);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for _ in 0..rng.gen_range(1..=6) {
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let len = rng.gen_range(1..=n);
        arcs.extend((0..len).map(|i| (vs[i], vs[(i + 1) % len])));
    }
    let d = Arc::new(Digraph::new(n, arcs).unwrap());
    let c = random_circuit_decomposition(&d, &mut rng);
    random_relative_embedding(d, &c, &mut rng)
}
