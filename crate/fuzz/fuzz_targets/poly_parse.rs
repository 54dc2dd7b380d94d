#![no_main]

use libfuzzer_sys::fuzz_target;
use tamari_core::SparsePoly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<SparsePoly>() {
        let canonical = p.to_string();
        assert_eq!(canonical.parse::<SparsePoly>().unwrap(), p);
    }
});
