#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::ecrun::{project_record, reconstruct_acyclic, Graph, RecordTable, TraceDump};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(dump) = TraceDump::from_json(text) else { return };
    assert_eq!(TraceDump::from_json(&dump.to_json()).unwrap(), dump);
    let record = dump.record();
    let _ = project_record(&record, &RecordTable::Acyclic { delta: 3 });
    // decoding a forged trace must fail cleanly, never panic
    let _ = reconstruct_acyclic(&Graph::cube(), 8, &record, &dump.state());
});
