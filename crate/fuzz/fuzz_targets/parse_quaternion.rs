#![no_main]

use libfuzzer_sys::fuzz_target;
use quatunit::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = io::parse_json(text) {
        let _ = io::parse_quaternion(&v);
    }
});
