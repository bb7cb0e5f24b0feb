#![no_main]

use libfuzzer_sys::fuzz_target;
use multicat::automata::format;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(dfa) = format::parse_json(text) {
        assert_eq!(format::parse_json(&format::to_json(&dfa)).unwrap(), dfa);
    }
    let _ = format::parse_any(text);
});
