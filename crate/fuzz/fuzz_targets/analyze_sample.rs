#![no_main]

use libfuzzer_sys::fuzz_target;
use trimmed_edgeworth::edgeworth::invert_expansion;
use trimmed_edgeworth::io::parse_sample;
use trimmed_edgeworth::{
    BiasEstimator, ExpansionCoefficients, ExpansionKind, PluginEstimates, SortedSample, TrimSpec,
};

// First two bytes pick the trimming levels, the rest is a sample file.
fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let alpha = data[0] as f64 / 512.0;
    let beta = 1.0 - data[1] as f64 / 512.0;
    let Ok(text) = std::str::from_utf8(&data[2..]) else {
        return;
    };
    let Ok(values) = parse_sample(text) else {
        return;
    };
    let Ok(sample) = SortedSample::new(values) else {
        return;
    };
    let Ok(spec) = TrimSpec::new(alpha, beta, sample.n()) else {
        return;
    };
    let Ok(est) = PluginEstimates::compute(&sample, &spec, BiasEstimator::default()) else {
        return;
    };
    for kind in [ExpansionKind::Normalized, ExpansionKind::Studentized] {
        let c = ExpansionCoefficients::empirical_unchecked(&est, kind);
        for p in [0.001, 0.025, 0.5, 0.975, 0.999] {
            let _ = invert_expansion(&c, p);
        }
    }
});
