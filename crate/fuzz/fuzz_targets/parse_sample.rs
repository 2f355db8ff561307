#![no_main]

use libfuzzer_sys::fuzz_target;
use trimmed_edgeworth::io::{format_sample, parse_sample};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(values) = parse_sample(text) {
        assert!(values.iter().all(|v| v.is_finite()));
        let again = parse_sample(&format_sample(&values, "fuzz")).unwrap();
        assert_eq!(again.len(), values.len());
        for (a, b) in again.iter().zip(&values) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
});
