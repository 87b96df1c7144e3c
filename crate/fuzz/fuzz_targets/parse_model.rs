#![no_main]

use albertine::io::{model_file_json, parse_model_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_model_file(text) else {
        return;
    };
    // Whatever parses must survive a round trip unchanged.
    let again = model_file_json(&file.model, file.endomorphism.as_ref());
    let back = parse_model_file(&again).expect("serialized model parses");
    assert_eq!(back.model, file.model);
    assert_eq!(
        back.endomorphism.map(|e| e.blocks),
        file.endomorphism.map(|e| e.blocks)
    );
    let _ = file.model.violations();
});
