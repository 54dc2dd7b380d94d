#![no_main]

use libfuzzer_sys::fuzz_target;
use tamari_core::closedform::Profile;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Profile>() {
        assert_eq!(p.key(), s);
        let _ = p.faces();
    }
});
