#![no_main]

use libfuzzer_sys::fuzz_target;
use multicat::automata::format;

// Anything that parses must print back to text that parses to the same DFA.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(dfa) = format::parse_text(text) {
        assert_eq!(format::parse_text(&format::to_text(&dfa)).unwrap(), dfa);
    }
});
