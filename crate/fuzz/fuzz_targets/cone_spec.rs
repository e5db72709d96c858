#![no_main]

use libfuzzer_sys::fuzz_target;
use rcurves::lattice::ConeSpec;

fuzz_target!(|data: &[u8]| {
    let Some((&r, rest)) = data.split_first() else { return };
    let r = 1 + (r as usize % 7);
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(c) = ConeSpec::parse(text, r) {
        assert_eq!(ConeSpec::parse(&c.to_text(), r).unwrap(), c);
    }
});
