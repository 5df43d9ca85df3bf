use std::sync::Arc;

use antiface::oracle::DEFAULT_LIMIT;
use antiface::reducer::small::cut_formula;
use antiface::*;

mod common;
use common::{all_decompositions, small_digraphs};

#[test]
fn small_orders_match_the_oracle() {
    let mut checked = 0;
    for d in small_digraphs(6) {
        let cut = d.vertex_count() == 2 && (0..d.arc_count()).filter(|&a| !d.is_loop(a)).count() == 2;
        for c in all_decompositions(&d) {
            let oracle = enumerate_relative_embeddings(&d, &c, DEFAULT_LIMIT).unwrap();
            let r = small_order_embedding(Arc::new(d.clone()), &c, true).unwrap();
            let got = r.embedding.antiface_count();
            assert_eq!(got, oracle.min, "{:?} {:?}", d.arcs(), c.to_arc_lists());
            if cut {
                assert_eq!(got, cut_formula(&d, &c), "{:?} {:?}", d.arcs(), c.to_arc_lists());
            }
            checked += 1;
        }
    }
    assert!(checked > 1000, "{checked}");
}
