#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::plane::{verify_axioms, ProjectivePlane};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for plane in [ProjectivePlane::from_csv(text), ProjectivePlane::from_json(text)].into_iter().flatten() {
        let _ = verify_axioms(&plane);
        assert_eq!(ProjectivePlane::from_csv(&plane.to_csv()).unwrap(), plane);
        assert_eq!(ProjectivePlane::from_json(&plane.to_json()).unwrap(), plane);
    }
});
