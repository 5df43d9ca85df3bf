//! Acceptance criteria, one PASS/FAIL line each. Tolerances are exact counts
//! and the wall-clock limits below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use antiface::interlace::{are_interlaced, extract_dense_subgraph, find_vertex_on_three_antifaces, TypeTable};
use antiface::oracle::DEFAULT_LIMIT;
use antiface::reducer::small::cut_formula;
use antiface::surgery::division::{division_search, PointColor};
use antiface::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{all_decompositions, division_instance, random_embedding, recount, small_digraphs};

const PER_RUN_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);
const MIN_SURGERIES: usize = 1000;
const MIN_DENSE_INSTANCES: usize = 100;
const DIVISION_INSTANCES: u64 = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn strict() -> ReduceOptions {
    ReduceOptions { mode: Mode::Strict, verify_steps: true }
}

fn one_circuit(d: &Digraph) -> CircuitDecomposition {
    CircuitDecomposition::new(d, vec![euler_circuit(d).unwrap().arcs().to_vec()]).unwrap()
}

fn tournaments() -> Outcome {
    let mut notes = Vec::new();
    for (n, want) in [(7, 1), (9, 2), (11, 1), (13, 2)] {
        let d = gen_rotational_tournament(n).map_err(|e| e.to_string())?;
        let c = one_circuit(&d);
        let t = Instant::now();
        let r = reduce_to_upper_embedding(Arc::new(d), &c, strict()).map_err(|e| format!("n={n}: {e}"))?;
        let took = t.elapsed();
        let got = r.embedding.antiface_count();
        ensure(got == want, || format!("n={n}: {got} antifaces, want {want}"))?;
        ensure(took < PER_RUN_LIMIT, || format!("n={n}: {took:?}"))?;
        notes.push(format!("n={n}:{got} ({:.1} ms)", took.as_secs_f64() * 1e3));
    }
    Ok(notes.join(", "))
}

fn steiner() -> Outcome {
    let mut notes = Vec::new();
    for n in [7, 9, 13] {
        let (d, c) = gen_sts(n).map_err(|e| e.to_string())?;
        let arcs = d.arc_count();
        let t = Instant::now();
        let r = reduce_to_upper_embedding(Arc::new(d), &c, strict()).map_err(|e| format!("n={n}: {e}"))?;
        let took = t.elapsed();
        let e = &r.embedding;
        ensure(e.antiface_count() == 1, || format!("n={n}: {} antifaces", e.antiface_count()))?;
        let covered: BTreeSet<usize> = e.antifaces()[0].arcs().iter().copied().collect();
        ensure(e.antifaces()[0].len() == arcs && covered.len() == arcs, || {
            format!("n={n}: antiface is not an euler circuit")
        })?;
        ensure(took < PER_RUN_LIMIT, || format!("n={n}: {took:?}"))?;
        notes.push(format!("STS({n}): 1 antiface of length {arcs}"));
    }
    Ok(notes.join(", "))
}

fn k12() -> Outcome {
    let d = gen_kn_minus_pm(12).map_err(|e| e.to_string())?;
    let c = split_euler_circuit(&d).map_err(|e| e.to_string())?;
    ensure(c.len() == 2, || format!("{} circuits", c.len()))?;
    let r = reduce_to_upper_embedding(Arc::new(d), &c, strict()).map_err(|e| e.to_string())?;
    let (a, g) = (r.embedding.antiface_count(), r.embedding.genus());
    ensure(a == 2, || format!("{a} antifaces"))?;
    ensure(g == Ok(23), || format!("genus {g:?}"))?;
    Ok("2 antifaces, genus 23 (12 - 60 + 4 = 2 - 2g)".into())
}

fn oracle() -> Outcome {
    let t = Instant::now();
    let (mut instances, mut cuts) = (0, 0);
    for d in small_digraphs(6) {
        let cut = d.vertex_count() == 2 && (0..d.arc_count()).filter(|&a| !d.is_loop(a)).count() == 2;
        for c in all_decompositions(&d) {
            let report = enumerate_relative_embeddings(&d, &c, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
            let r = small_order_embedding(Arc::new(d.clone()), &c, true).map_err(|e| e.to_string())?;
            let got = r.embedding.antiface_count();
            let context = || format!("arcs {:?}, circuits {:?}", d.arcs(), c.to_arc_lists());
            ensure(got == report.min, || format!("{}: {got} vs oracle {}", context(), report.min))?;
            if cut {
                ensure(got == cut_formula(&d, &c), || format!("{}: cut formula {}", context(), cut_formula(&d, &c)))?;
                cuts += 1;
            }
            instances += 1;
        }
    }

    let (d, c) = gen_sts(7).map_err(|e| e.to_string())?;
    let report = enumerate_relative_embeddings(&d, &c, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
    ensure(report.states == 128, || format!("STS(7): {} states", report.states))?;
    let r = reduce_to_upper_embedding(Arc::new(d), &c, strict()).map_err(|e| e.to_string())?;
    ensure(r.embedding.antiface_count() == report.min, || format!("STS(7): oracle min {}", report.min))?;

    let d = gen_rotational_tournament(5).map_err(|e| e.to_string())?;
    let c = one_circuit(&d);
    let report = enumerate_relative_embeddings(&d, &c, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
    ensure(report.states == 1, || format!("tournament 5: {} states", report.states))?;
    let r = reduce_to_upper_embedding(Arc::new(d), &c, ReduceOptions { mode: Mode::BestEffort, verify_steps: true })
        .map_err(|e| e.to_string())?;
    ensure(r.embedding.antiface_count() == report.min, || "tournament 5 differs from the oracle".into())?;

    let took = t.elapsed();
    ensure(took < SWEEP_LIMIT, || format!("sweep took {took:?}"))?;
    Ok(format!("{instances} small instances ({cuts} with a 2-edge-cut), STS(7) 128 states, T5 1 state; {took:.2?}"))
}

fn verified(e: &Embedding, c: &CircuitDecomposition) -> Result<(), String> {
    let report = verify_embedding(e.rotation_system(), c);
    ensure(report.is_ok(), || report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))
}

fn properties() -> Outcome {
    let mut surgeries = 0;
    let mut seed = 0u64;
    while surgeries < MIN_SURGERIES {
        seed += 1;
        let e = random_embedding(seed);
        let d = e.digraph().clone();
        let c = CircuitDecomposition::new(&d, e.profaces().iter().map(|f| f.arcs().to_vec()).collect())
            .map_err(|e| e.to_string())?;
        if let Some((v, faces)) = find_vertex_on_three_antifaces(&e) {
            let out = merge_three_at_vertex(&e, v, faces).map_err(|e| format!("seed {seed}: {e}"))?;
            verified(&out, &c).map_err(|m| format!("merge_three seed {seed}: {m}"))?;
            surgeries += 1;
        }
        let at = e.antifaces_at();
        'split: for a in 0..e.antiface_count() {
            let seq = e.antiface(a).vertex_sequence(&d);
            for (v, faces_at_v) in at.iter().enumerate() {
                let pos: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] == v).collect();
                if let (true, Some(b)) = (pos.len() >= 2, faces_at_v.iter().copied().find(|&b| b != a)) {
                    let out = split_swap(&e, a, pos[0], pos[1], b).map_err(|e| format!("seed {seed}: {e}"))?;
                    verified(&out.embedding, &c).map_err(|m| format!("split_swap seed {seed}: {m}"))?;
                    surgeries += 1;
                    break 'split;
                }
            }
        }
        'interlaced: for a in 0..e.antiface_count() {
            let seq = e.antiface(a).vertex_sequence(&d);
            for x in 0..d.vertex_count() {
                for y in 0..d.vertex_count() {
                    if x == y || !are_interlaced(&seq, x, y) {
                        continue;
                    }
                    let b = at[x].iter().copied().find(|&b| b != a);
                    let cc = at[y].iter().copied().find(|&f| f != a && Some(f) != b);
                    if let (Some(b), Some(cc)) = (b, cc) {
                        let out = merge_interlaced(&e, a, b, cc, x, y).map_err(|e| format!("seed {seed}: {e}"))?;
                        verified(&out, &c).map_err(|m| format!("merge_interlaced seed {seed}: {m}"))?;
                        surgeries += 1;
                        break 'interlaced;
                    }
                }
            }
        }
    }

    let mut instances = 0;
    let mut steps = 0;
    let mut blow_ups = 0;
    for seed in 0..MIN_DENSE_INSTANCES as u64 {
        let (n, k) = [(7, 0), (9, 0), (12, 1), (13, 1), (17, 2), (19, 2), (20, 2), (15, 1)][seed as usize % 8];
        let d = Arc::new(gen_random_dense_eulerian(n, k, seed).map_err(|e| e.to_string())?);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = if rng.gen_bool(0.5) {
            greedy_circuit_decomposition(&d).unwrap()
        } else {
            random_circuit_decomposition(&d, &mut rng)
        };
        let start = random_relative_embedding(d.clone(), &c, &mut rng);
        verified(&start, &c)?;
        let r = reduce_embedding(start, strict()).map_err(|e| format!("dense seed {seed}: {e}"))?;
        verified(&r.embedding, &c)?;
        let want = if (d.vertex_count() + d.arc_count() + c.len()) % 2 == 1 { 1 } else { 2 };
        ensure(r.embedding.antiface_count() == want, || {
            format!("dense seed {seed}: {} antifaces", r.embedding.antiface_count())
        })?;
        r.trace.check_consistency().map_err(|m| format!("dense seed {seed}: {m}"))?;
        steps += r.trace.len();
        instances += 1;

        // Blow-ups on the locally irreducible state reached by three-face merges.
        let mut e = random_relative_embedding(d.clone(), &c, &mut rng);
        while let Some((v, faces)) = find_vertex_on_three_antifaces(&e) {
            e = merge_three_at_vertex(&e, v, faces).map_err(|e| e.to_string())?;
        }
        let types = TypeTable::new(&e).map_err(|e| e.to_string())?;
        for x in 0..d.vertex_count() {
            if let VertexType::Pair(a, b) = types.vertex_type(x) {
                if types.vertices(a).len() >= 5 {
                    let out = blow_up(&e, a, b, x).map_err(|e| format!("blow_up seed {seed}: {e}"))?;
                    verified(&out.embedding, &c).map_err(|m| format!("blow_up seed {seed}: {m}"))?;
                    blow_ups += 1;
                }
            }
        }
    }
    ensure(surgeries >= MIN_SURGERIES && instances >= MIN_DENSE_INSTANCES, || "too few runs".into())?;
    Ok(format!(
        "{surgeries} random surgeries, {blow_ups} blow-ups, {instances} dense instances ({steps} verified steps), zero violations"
    ))
}

fn division() -> Outcome {
    for seed in 0..DIVISION_INSTANCES {
        let (points, m, p_twice) = division_instance(seed);
        let d = division_search(&points, m, p_twice).map_err(|e| format!("seed {seed}: {e}"))?;
        let q = recount(&points, d.first, d.second);
        ensure(q == d.q, || format!("seed {seed}: reported q {} but interval holds {q}", d.q))?;
        ensure((2 * q).abs_diff(p_twice) < 2 * m, || format!("seed {seed}: q = {q} outside p +- m"))?;
    }
    use PointColor::*;
    let z9 = [Black, White, White, Black, White, Red, Red, Red, White];
    let d = division_search(&z9, 2, 6).map_err(|e| e.to_string())?;
    ensure((d.first, d.second, d.q) == (0, 3, 2), || format!("Z9 gave {d:?}"))?;
    // With m = 2, p = 3: no ordered pair of black points has |q - p| < 1.
    let qs = [recount(&z9, 0, 3), recount(&z9, 3, 0)];
    ensure(qs == [2, 5] && qs.iter().all(|&q| q.abs_diff(3) >= 1), || format!("Z9 interval counts {qs:?}"))?;
    Ok(format!("{DIVISION_INSTANCES} random instances feasible; Z9 gives (b0, b1) with q = 2, interval counts {qs:?}"))
}

fn degeneracy() -> Outcome {
    let mut extracted = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while extracted < 200 {
        let (left, right) = (rng.gen_range(2..=10), rng.gen_range(2..=10));
        let n = left + right;
        let d = rng.gen_range(1..=n / 2);
        let mut h = SimpleGraph::new(n);
        for u in 0..left {
            for v in left..n {
                if rng.gen_bool(0.85) {
                    h.add_edge(u, v);
                }
            }
        }
        if h.edge_count() <= d * (n - d) {
            continue;
        }
        let s = extract_dense_subgraph(&h, d).map_err(|e| format!("n={n}, d={d}: {e}"))?;
        let min_inside = s.iter().map(|&v| h.neighbors(v).filter(|w| s.contains(w)).count()).min().unwrap_or(0);
        ensure(!s.is_empty() && min_inside > d, || format!("n={n}, d={d}: induced min degree {min_inside}"))?;
        extracted += 1;
    }
    for (d, n) in [(1, 4), (2, 7), (3, 9), (4, 12)] {
        let mut h = SimpleGraph::new(n);
        for u in 0..d {
            for v in d..n {
                h.add_edge(u, v);
            }
        }
        ensure(extract_dense_subgraph(&h, d).is_err(), || format!("K_{{{d},{}}} accepted", n - d))?;
    }
    Ok(format!("{extracted} extractions with induced min degree >= d + 1; K_{{d,n-d}} rejected"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 tournaments", tournaments),
        ("2 oriented Steiner systems", steiner),
        ("3 K12 minus a perfect matching", k12),
        ("4 oracle certification", oracle),
        ("5 property suite", properties),
        ("6 division search", division),
        ("7 bipartite degeneracy", degeneracy),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
