#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::legit::{dangerous_pairs, find_bad_pairs, line_types, PointColoring};
use ppcolor::plane::build_plane;

fuzz_target!(|data: &[u8]| {
    let Some((&c, rest)) = data.split_first() else { return };
    let c = u32::from(c % 16) + 1;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(col) = PointColoring::from_json(text, c) else { return };
    assert_eq!(PointColoring::from_json(&col.to_json(), c).unwrap(), col);
    if col.len() == 7 {
        let fano = build_plane(2).unwrap();
        let _ = line_types(&fano, &col).unwrap();
        let _ = dangerous_pairs(&fano, &col).unwrap();
        assert_eq!(find_bad_pairs(&fano, &col).is_ok(), col.is_total());
    }
});
