#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::dyck::{count_words, dyck_to_tree, pad_injection, tree_to_dyck, DescentSet, DyckWord};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = text.parse::<DescentSet>() {
        assert_eq!(set.to_string().parse::<DescentSet>().unwrap(), set);
        let _ = count_words(6, 2, &set);
    }
    if let Ok(word) = text.parse::<DyckWord>() {
        assert_eq!(word.to_string().parse::<DyckWord>().unwrap(), word);
        if word.is_full_dyck() {
            assert_eq!(tree_to_dyck(&dyck_to_tree(&word).unwrap()), word);
        }
        if word.is_partial_dyck() {
            if let Ok(full) = pad_injection(&word, &DescentSet::all()) {
                assert!(full.is_full_dyck());
            }
        }
    }
});
