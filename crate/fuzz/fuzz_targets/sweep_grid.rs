#![no_main]

use libfuzzer_sys::fuzz_target;
use multicat::grid::SweepGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = text.parse::<SweepGrid>() {
        let _ = grid.cases();
    }
});
