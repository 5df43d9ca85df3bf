use std::collections::BTreeMap;
use std::sync::Arc;

use antiface::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDERS: [(usize, usize); 8] = [(7, 0), (9, 0), (12, 1), (13, 1), (17, 2), (19, 2), (20, 2), (15, 1)];

fn instance(seed: u64) -> (Arc<Digraph>, CircuitDecomposition, Embedding) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, k) = ORDERS[seed as usize % ORDERS.len()];
    let d = Arc::new(gen_random_dense_eulerian(n, k, seed).unwrap());
    let c = if rng.gen_bool(0.5) {
        greedy_circuit_decomposition(&d).unwrap()
    } else {
        random_circuit_decomposition(&d, &mut rng)
    };
    let e = random_relative_embedding(d.clone(), &c, &mut rng);
    (d, c, e)
}

#[test]
fn random_dense_instances_reach_the_parity_bound() {
    let mut failures: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    for seed in 0..300 {
        let (d, c, e) = instance(seed);
        let want = if (d.vertex_count() + d.arc_count() + c.len()) % 2 == 1 { 1 } else { 2 };
        let opts = ReduceOptions { mode: Mode::Strict, verify_steps: true };
        match reduce_embedding(e, opts) {
            Ok(r) => {
                assert_eq!(r.embedding.antiface_count(), want, "seed {seed}");
                assert!(r.trace.check_consistency().is_ok());
                assert!(r.trace.longest_flat_run() <= 2, "seed {seed}");
                for s in &r.trace.steps {
                    *cases.entry(s.case.clone()).or_default() += 1;
                }
            }
            Err(e) => failures.entry(e.to_string()).or_default().push(seed),
        }
    }
    assert!(cases.contains_key("1"));
    assert!(failures.is_empty(), "{failures:#?}");
}

/// Anneals over proface-preserving swaps towards locally irreducible
/// embeddings with many antifaces.
fn irreducible_with_many_antifaces(e: Embedding, rng: &mut ChaCha8Rng, rounds: usize) -> Embedding {
    use antiface::surgery::three_segment_swap;
    let score = |e: &Embedding| {
        let crowded = e.antifaces_at().iter().map(|f| f.len().saturating_sub(2)).sum::<usize>();
        e.antiface_count() as f64 - 2.5 * crowded as f64
    };
    let d = e.digraph().clone();
    let mut cur = e;
    let mut best = cur.clone();
    for round in 0..rounds {
        let temp = 1.5 * (1.0 - round as f64 / rounds as f64) + 0.05;
        let v = rng.gen_range(0..d.vertex_count());
        let ins = d.in_half_arcs(v);
        if ins.len() < 3 {
            continue;
        }
        let picks = rand::seq::index::sample(rng, ins.len(), 3);
        let cuts = [ins[picks.index(0)], ins[picks.index(1)], ins[picks.index(2)]];
        let rot = three_segment_swap(cur.rotation_system().rotation(v), cuts);
        let Ok(next) = cur.with_rotation(v, rot) else { continue };
        let gain = score(&next) - score(&cur);
        if gain >= 0.0 || rng.gen_bool((gain / temp).exp()) {
            cur = next;
            let irreducible = cur.antifaces_at().iter().all(|f| f.len() <= 2);
            if irreducible && cur.antiface_count() > best.antiface_count() {
                best = cur.clone();
            }
        }
    }
    best
}

#[test]
fn irreducible_starts_reach_the_parity_bound() {
    let mut failures: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    let mut starts: BTreeMap<usize, usize> = BTreeMap::new();
    for seed in 0..60 {
        let (d, c, e) = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let opts = ReduceOptions { mode: Mode::Strict, verify_steps: true };
        let start = reduce_embedding(e, opts).unwrap().embedding;
        let start = irreducible_with_many_antifaces(start, &mut rng, 3000);
        *starts.entry(start.antiface_count()).or_default() += 1;
        let want = if (d.vertex_count() + d.arc_count() + c.len()) % 2 == 1 { 1 } else { 2 };
        match reduce_embedding(start, opts) {
            Ok(r) => {
                assert_eq!(r.embedding.antiface_count(), want, "seed {seed}");
                assert!(r.trace.check_consistency().is_ok());
                assert!(r.trace.longest_flat_run() <= 2, "seed {seed}");
                for s in &r.trace.steps {
                    *cases.entry(s.case.clone()).or_default() += 1;
                }
            }
            Err(e) => failures.entry(e.to_string()).or_default().push(seed),
        }
    }
    assert!(starts.range(3..).count() > 0, "{starts:?}");
    assert!(cases.keys().any(|c| c != "1"), "{cases:?}");
    assert!(failures.is_empty(), "{failures:#?}");
}
