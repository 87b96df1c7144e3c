#![no_main]

use albertine::dynamics::sv_limit;
use albertine::io::parse_matrix_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix_file(text) {
        if m.rows() <= 6 {
            let _ = sv_limit(&m, 64);
        }
    }
});
