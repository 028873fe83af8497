#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::ecrun::{reconstruct_acyclic, run_acyclic, Graph, RandomTape};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = Graph::from_json(text) else { return };
    assert_eq!(Graph::from_record(&g.to_record()).unwrap().to_record(), g.to_record());
    let delta = g.max_degree() as u32;
    if !(2..=6).contains(&delta) || g.num_edges() > 40 {
        return;
    }
    let k = 4 * (delta - 1);
    let mut tape = RandomTape::from_seed(0, 20 * g.num_edges(), 2 * (delta - 1));
    let run = run_acyclic(&g, k, &mut tape, 50 * g.num_edges()).unwrap();
    assert_eq!(reconstruct_acyclic(&g, k, &run.record, &run.colors).unwrap(), run.consumed);
});
