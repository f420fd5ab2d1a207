#![no_main]

use libfuzzer_sys::fuzz_target;
use pullin_cli::config::parse_dims;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = parse_dims(s) {
            let v = d.values();
            assert!(!v.is_empty() && v.len() <= 1000);
            assert!(v.iter().all(|x| x.is_finite()));
        }
    }
});
