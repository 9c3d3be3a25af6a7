#![no_main]

use libfuzzer_sys::fuzz_target;
use mcdm_core::ingest::{aggregate_survey, parse_survey_csv, Statistic};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(responses) = parse_survey_csv(text, "group") else { return };
    for statistic in [Statistic::Mean, Statistic::StdDev] {
        if let Ok(matrix) = aggregate_survey(&responses, statistic) {
            assert!(matrix.rows().flatten().all(|v| v.is_finite() && *v >= 0.0));
        }
    }
});
