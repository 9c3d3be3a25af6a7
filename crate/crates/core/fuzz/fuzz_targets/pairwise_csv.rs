#![no_main]

use libfuzzer_sys::fuzz_target;
use mcdm_core::ingest::parse_pairwise_csv;
use mcdm_core::weighting::ahp_weights;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pairwise) = parse_pairwise_csv(text) else { return };
    if let Ok(outcome) = ahp_weights(&pairwise) {
        let sum: f64 = outcome.weights.weights().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12);
    }
});
