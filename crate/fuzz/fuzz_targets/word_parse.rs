#![no_main]

use libfuzzer_sys::fuzz_target;
use tamari_core::paths::{decompose, factorize, star_fold};
use tamari_core::DyckWord;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = s.parse::<DyckWord>() {
        assert_eq!(format!("{}:{w}", w.m()).parse::<DyckWord>().unwrap(), w);
        if !w.is_empty() {
            let _ = decompose(&w).unwrap();
            assert_eq!(star_fold(&factorize(&w).unwrap()).unwrap(), w);
        }
    }
});
