#![no_main]

use libfuzzer_sys::fuzz_target;

// One argument per line; validation must reject or accept without panicking.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let args = std::iter::once("pullin").chain(s.lines());
        if let Err(e) = pullin_cli::parse_run_config(args) {
            let _ = e.exit_code();
            let _ = e.to_json_line();
        }
    }
});
