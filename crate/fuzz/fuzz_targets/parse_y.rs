#![no_main]

use bmjet::harness::parse_y;
use bmjet::JetPoint;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(y) = parse_y(text) {
            let _ = JetPoint::at(0.0, y);
        }
    }
});
