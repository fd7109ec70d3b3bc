#![no_main]

use flagvol::instance::{parse_flag_arg, parse_range};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_flag_arg(s);
        if let Ok((lo, hi)) = parse_range(s) {
            assert!(lo <= hi);
        }
    }
});
