#![no_main]

use albertine::dynamics::Tolerances;
use albertine::io::parse_model_file;
use albertine::verify::verify_pair;
use libfuzzer_sys::fuzz_target;
use num_bigint::BigInt;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_model_file(text) else {
        return;
    };
    let Some(alpha) = file.endomorphism else {
        return;
    };
    // Keep each run cheap: small dimension and small entries.
    if file.model.validate().is_err() || file.model.dimension() > 3 || alpha.max_entry() > BigInt::from(50) {
        return;
    }
    let _ = verify_pair(&file.model, &alpha, &Tolerances::default());
});
