#![no_main]

use libfuzzer_sys::fuzz_target;
use quatunit::io;

const OPS: [&str; 4] = ["identity", "orbit", "endo-check", "bridge"];

// The first byte picks the operation, the rest is the JSON body.
fuzz_target!(|data: &[u8]| {
    let Some((&op, body)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(body) else { return };
    if let Ok(v) = io::parse_json(text) {
        let _ = io::parse_dynamics(OPS[op as usize % OPS.len()], &v);
    }
});
