#![no_main]

use libfuzzer_sys::fuzz_target;
use ppcolor::config::SearchConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = SearchConfig::from_toml(text) {
        assert!(cfg.exp_lo < cfg.exp_hi && cfg.exp_step > 0.0);
        let grid = cfg.grid();
        assert!(!grid.is_empty() && grid.windows(2).all(|w| w[0] < w[1]));
    }
    let _ = SearchConfig::from_json(text);
});
