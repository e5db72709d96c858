#![no_main]

use libfuzzer_sys::fuzz_target;
use rcurves::forms::SurfaceModel;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = SurfaceModel::parse(text) {
        let again = SurfaceModel::parse(&m.to_text()).expect("printed model parses");
        assert_eq!(again.points(), m.points());
    }
});
