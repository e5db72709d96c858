#![no_main]

use libfuzzer_sys::fuzz_target;
use rcurves_cli::config::{parse_kv, Command, RunConfig};

fuzz_target!(|data: &[u8]| {
    let Some((&c, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(mut map) = parse_kv(text) else { return };
    // no file access from the fuzzer
    map.remove("model");
    let command = Command::ALL[c as usize % Command::ALL.len()];
    if let Ok(cfg) = RunConfig::from_map(command, &map) {
        let _ = cfg.resolved();
    }
});
