#![no_main]

use bmjet::harness::parse_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(grid) = parse_grid(text) {
            let n = grid.points().len();
            assert!((1..=bmjet::harness::sweep::MAX_GRID_POINTS).contains(&n));
        }
    }
});
