#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::coding::{code_from_lengths, kraft_sum, PrefixCode};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(code) = PrefixCode::from_json(text) else { return };
    assert!(code.is_prefix_free());
    assert_eq!(PrefixCode::from_json(&code.to_json()).unwrap(), code);
    let lengths = code.lengths();
    assert!(kraft_sum(&lengths, code.alphabet()).unwrap() <= num_traits_one());
    assert!(code_from_lengths(&lengths, code.alphabet()).is_ok());
});

fn num_traits_one() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(1.into())
}
