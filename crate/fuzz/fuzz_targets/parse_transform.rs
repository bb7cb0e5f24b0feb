#![no_main]

use libfuzzer_sys::fuzz_target;
use multicat::automata::{parse_transform, render_map};

// The first byte picks the state count, the rest is the transformation text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = usize::from(n % 16) + 1;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(tf) = parse_transform(text, n) {
        let map = tf.to_map();
        assert_eq!(map.len(), n);
        assert_eq!(parse_transform(&render_map(&map), n).unwrap().to_map(), map);
    }
});
