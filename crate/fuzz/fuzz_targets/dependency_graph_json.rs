#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::lll::{cluster_check, spencer_check, CheckMode, DependencyGraph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = DependencyGraph::from_json(text) else { return };
    let again = DependencyGraph::from_record(g.to_record()).unwrap();
    assert_eq!(again.to_record(), g.to_record());
    let _ = spencer_check(&g);
    if g.len() <= 16 {
        let _ = cluster_check(&g, &vec![0.5; g.len()], &CheckMode::Exact);
    }
});
