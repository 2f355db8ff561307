#![no_main]

use libfuzzer_sys::fuzz_target;
use trimmed_edgeworth::SimulationConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(config) = SimulationConfig::from_toml_str(text) {
        if config.validate().is_ok() {
            let round = SimulationConfig::from_toml_str(&config.to_toml_string()).unwrap();
            assert_eq!(round, config);
        }
    }
});
