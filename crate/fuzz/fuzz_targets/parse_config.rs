#![no_main]

use bmjet::harness::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = parse_config(text) {
            // anything accepted must survive its own serialization
            let again = parse_config(&cfg.to_toml()).expect("re-parse of serialized config");
            assert_eq!(again, cfg);
        }
    }
});
