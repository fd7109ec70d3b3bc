#![no_main]

use flagvol::fan::DecompositionVariant;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = s.parse::<DecompositionVariant>() {
            assert_eq!(v.to_string().parse::<DecompositionVariant>(), Ok(v));
        }
    }
});
