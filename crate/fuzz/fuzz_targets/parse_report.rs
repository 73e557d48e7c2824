#![no_main]

use bmjet::harness::{parse_report, summarize};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = parse_report(text) {
            let _ = summarize(&doc);
        }
    }
});
