#![no_main]

use libfuzzer_sys::fuzz_target;
use rcurves::lattice::DivisorClass;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = DivisorClass::parse_in(text, None) {
        assert_eq!(DivisorClass::parse_in(&c.to_string(), None).unwrap(), c);
    }
    let _ = DivisorClass::parse_in(text, Some(3));
});
