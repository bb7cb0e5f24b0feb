#![no_main]

use libfuzzer_sys::fuzz_target;
use multicat::bounds::{interval_bound, SizeVector};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(n) = text.parse::<SizeVector>() {
        assert_eq!(n.to_string().parse::<SizeVector>().unwrap(), n);
        if n.k() <= 64 && n.as_slice().iter().all(|&x| x <= 4096) {
            let _ = interval_bound(&n);
        }
    }
});
