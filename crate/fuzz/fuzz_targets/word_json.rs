#![no_main]

use libfuzzer_sys::fuzz_target;
use tamari_core::DyckWord;

fuzz_target!(|data: &[u8]| {
    if let Ok(w) = serde_json::from_slice::<DyckWord>(data) {
        let again: DyckWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(again, w);
    }
});
