use std::collections::BTreeSet;
use std::sync::Arc;

use antiface::interlace::{are_interlaced, extract_dense_subgraph, find_vertex_on_three_antifaces, TypeTable};
use antiface::surgery::division::{division_search, PointColor};
use antiface::surgery::{check_surgery, three_segment_swap};
use antiface::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{division_instance, random_embedding, recount};

/// Antifaces as arc sets; the merged walk's order depends on the cuts.
fn antiface_set(e: &Embedding) -> BTreeSet<BTreeSet<usize>> {
    e.antifaces().iter().map(|f| f.arcs().iter().copied().collect()).collect()
}

fn decomposition(e: &Embedding) -> CircuitDecomposition {
    CircuitDecomposition::new(e.digraph(), e.profaces().iter().map(|f| f.arcs().to_vec()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_face_merge_is_independent_of_entry_choice(seed in any::<u64>()) {
        let e = random_embedding(seed);
        let Some((v, faces)) = find_vertex_on_three_antifaces(&e) else { return Ok(()) };
        let d = e.digraph().clone();
        let entries: Vec<Vec<HalfArc>> =
            faces.iter().map(|&f| e.antiface(f).visits(&d, v).into_iter().map(|(_, h)| h).collect()).collect();
        let reference = merge_three_at_vertex(&e, v, faces).unwrap();
        check_surgery(&e, &reference, -2, &faces).unwrap();
        prop_assert!(verify_embedding(reference.rotation_system(), &decomposition(&e)).is_ok());
        for &ha in &entries[0] {
            for &hb in &entries[1] {
                for &hc in &entries[2] {
                    let rot = three_segment_swap(e.rotation_system().rotation(v), [ha, hb, hc]);
                    let other = e.with_rotation(v, rot).unwrap();
                    prop_assert_eq!(antiface_set(&other), antiface_set(&reference));
                }
            }
        }
    }

    #[test]
    fn split_swap_keeps_count_and_profaces(seed in any::<u64>()) {
        let e = random_embedding(seed);
        let d = e.digraph().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for a in 0..e.antiface_count() {
            let seq = e.antiface(a).vertex_sequence(&d);
            for v in 0..d.vertex_count() {
                let pos: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] == v).collect();
                let Some(b) = e.antifaces_at()[v].iter().copied().find(|&b| b != a) else { continue };
                if pos.len() < 2 {
                    continue;
                }
                let pick = rand::seq::index::sample(&mut rng, pos.len(), 2);
                let out = split_swap(&e, a, pos[pick.index(0)], pos[pick.index(1)], b).unwrap();
                check_surgery(&e, &out.embedding, 0, &[a, b]).unwrap();
                prop_assert!(verify_embedding(out.embedding.rotation_system(), &decomposition(&e)).is_ok());
                prop_assert_ne!(out.separate_face, out.merged_face);
            }
        }
    }

    #[test]
    fn interlaced_merge_drops_two(seed in any::<u64>()) {
        let e = random_embedding(seed);
        let d = e.digraph().clone();
        let at = e.antifaces_at();
        for a in 0..e.antiface_count() {
            let seq = e.antiface(a).vertex_sequence(&d);
            for x in 0..d.vertex_count() {
                for y in 0..d.vertex_count() {
                    if x == y || !are_interlaced(&seq, x, y) {
                        continue;
                    }
                    let b = at[x].iter().copied().find(|&b| b != a);
                    let c = at[y].iter().copied().find(|&c| c != a && Some(c) != b);
                    let (Some(b), Some(c)) = (b, c) else { continue };
                    let out = merge_interlaced(&e, a, b, c, x, y).unwrap();
                    check_surgery(&e, &out, -2, &[a, b, c]).unwrap();
                    prop_assert!(verify_embedding(out.rotation_system(), &decomposition(&e)).is_ok());
                }
            }
        }
    }

    #[test]
    fn touch_graph_of_an_irreducible_embedding(seed in any::<u64>()) {
        let e = random_embedding(seed);
        let mut cur = e;
        while let Some((v, faces)) = find_vertex_on_three_antifaces(&cur) {
            cur = merge_three_at_vertex(&cur, v, faces).unwrap();
        }
        let k = TouchGraph::build(&cur).unwrap();
        prop_assert_eq!(k.edge_count(), cur.digraph().vertex_count());
        prop_assert_eq!(k.node_count(), cur.antiface_count());
        prop_assert!(k.is_connected());
        let total: usize = k.weighted().values().sum();
        prop_assert_eq!(total, k.edge_count());
    }

    #[test]
    fn division_bounds_hold(seed in any::<u64>()) {
        let (points, m, p_twice) = division_instance(seed);
        let d = division_search(&points, m, p_twice).unwrap();
        prop_assert_eq!(points[d.first], PointColor::Black);
        prop_assert_eq!(points[d.second], PointColor::Black);
        prop_assert_eq!(d.q, recount(&points, d.first, d.second));
        let dist = (2 * d.q).abs_diff(p_twice);
        // Integer p: |q - p| <= m - 1. Half-integer p: |q - p| <= m - 1/2.
        let bound = if p_twice % 2 == 0 { 2 * m - 2 } else { 2 * m - 1 };
        prop_assert!(dist <= bound, "q = {}, p = {}/2, m = {}", d.q, p_twice, m);
    }

    #[test]
    fn degeneracy_extraction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (left, right) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let n = left + right;
        let density = rng.gen_range(0.3..1.0);
        let mut h = SimpleGraph::new(n);
        for u in 0..left {
            for v in left..n {
                if rng.gen_bool(density) {
                    h.add_edge(u, v);
                }
            }
        }
        let d = rng.gen_range(0..=n / 2);
        match extract_dense_subgraph(&h, d) {
            Ok(s) => {
                prop_assert!(h.edge_count() > d * (n - d));
                prop_assert!(!s.is_empty());
                for &v in &s {
                    let inside = h.neighbors(v).filter(|w| s.contains(w)).count();
                    prop_assert!(inside > d);
                }
            }
            Err(_) => prop_assert!(n < 2 * d || h.edge_count() <= d * (n - d)),
        }
    }
}

#[test]
fn dense_irreducible_states() {
    let mut calls = 0;
    for seed in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, k) = [(12, 1), (13, 1), (17, 2)][seed as usize % 3];
        let d = Arc::new(gen_random_dense_eulerian(n, k, seed).unwrap());
        let c = random_circuit_decomposition(&d, &mut rng);
        let mut e = random_relative_embedding(d.clone(), &c, &mut rng);
        while let Some((v, faces)) = find_vertex_on_three_antifaces(&e) {
            e = merge_three_at_vertex(&e, v, faces).unwrap();
        }
        let types = TypeTable::new(&e).unwrap();
        let profile = d.density_profile();
        let touch = TouchGraph::build(&e).unwrap();
        assert!(touch.is_connected());
        for a in touch.loop_nodes() {
            assert!(types.vertices(a).len() + profile.k >= profile.n, "seed {seed}");
        }
        for x in 0..d.vertex_count() {
            let VertexType::Pair(p, q) = types.vertex_type(x) else { continue };
            for (a, b) in [(p, q), (q, p)] {
                let size_a = types.vertices(a).len();
                if size_a < 5 {
                    continue;
                }
                let union: BTreeSet<usize> = types.vertices(a).union(types.vertices(b)).copied().collect();
                let out = blow_up(&e, a, b, x).unwrap();
                calls += 1;
                let after = &out.embedding;
                check_surgery(&e, after, 0, &[a, b]).unwrap();
                assert!(verify_embedding(after.rotation_system(), &c).is_ok());
                let va = after.antiface(out.faces.0).vertex_set(&d);
                let vb = after.antiface(out.faces.1).vertex_set(&d);
                assert_eq!(va.union(&vb).copied().collect::<BTreeSet<_>>(), union);
                assert!(va.contains(&x) && vb.contains(&x));
                let bound = (size_a - 2).min(profile.n - profile.k - 1);
                if out.changed {
                    assert!(2 * va.len() >= bound && 2 * vb.len() >= bound, "seed {seed}");
                }
            }
        }
    }
    assert!(calls > 0);
}
