#![no_main]

use fscat::exactnum::{parse_rational, Cyc, CycJson};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_rational(s);
        if let Ok(j) = serde_json::from_str::<CycJson>(s) {
            if let Ok(v) = Cyc::from_json(&j) {
                assert_eq!(Cyc::from_json(&v.to_json()).unwrap(), v);
            }
        }
    }
});
