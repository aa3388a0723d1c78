#![no_main]

use fscat::fusioncat::{validate_spec, SpecFile};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(spec) = SpecFile::from_json(s) {
            if spec.structural_errors().is_empty() && spec.simples.len() <= 6 {
                let _ = validate_spec(&spec);
            }
        }
    }
});
