#![no_main]

use libfuzzer_sys::fuzz_target;
use tamari_core::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Report::from_json(s) {
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let _ = r.to_csv();
        let _ = r.to_string();
    }
});
