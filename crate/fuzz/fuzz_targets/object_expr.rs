#![no_main]

use fscat::bundled;
use fscat::fusioncat::ObjectExpr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(parsed) = ObjectExpr::parse_raw(s) {
            let cat = bundled::category("ty_z2z2_plus").unwrap();
            let _ = ObjectExpr::resolve(&parsed, &cat.ring);
        }
    }
});
