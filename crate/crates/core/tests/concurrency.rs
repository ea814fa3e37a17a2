//! Everything is a pure function on immutable values: shared references can
//! be used from any number of threads with identical results.

use std::sync::Arc;
use std::thread;

use raagp_core::classification::classify;
use raagp_core::fixtures;
use raagp_core::gog::dirac_decompose;
use raagp_core::presentation::{pro_p_abelian_invariants, raag_presentation};
use raagp_core::recognition::chordality;

#[test]
fn concurrent_invocations_agree() {
    let graph = Arc::new(fixtures::kite());
    let baseline = (
        classify(&graph).to_json_string(),
        serde_json::to_string(&chordality(&graph)).unwrap(),
        serde_json::to_string(&dirac_decompose(&graph).unwrap()).unwrap(),
        format!("{}", pro_p_abelian_invariants(&raag_presentation(&graph), 3).unwrap()),
    );
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let g = Arc::clone(&graph);
            thread::spawn(move || {
                (
                    classify(&g).to_json_string(),
                    serde_json::to_string(&chordality(&g)).unwrap(),
                    serde_json::to_string(&dirac_decompose(&g).unwrap()).unwrap(),
                    format!("{}", pro_p_abelian_invariants(&raag_presentation(&g), 3).unwrap()),
                )
            })
        })
        .collect();
    for handle in handles {
        assert_eq!(handle.join().unwrap(), baseline);
    }
}
