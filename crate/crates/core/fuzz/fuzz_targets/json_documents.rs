#![no_main]

use libfuzzer_sys::fuzz_target;
use mcdm_core::report::{export_json, import_json};
use mcdm_core::repro::ReproReport;
use mcdm_core::sensitivity::{LeaveOneOutReport, SensitivityReport};
use mcdm_core::{DecisionMatrix, TopsisResult};
use serde::{de::DeserializeOwned, Serialize};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(text: &str) {
    if let Ok(value) = import_json::<T>(text) {
        let written = export_json(&value);
        let back: T = import_json(&written).expect("exported document parses");
        assert_eq!(export_json(&back), written);
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    round_trip::<DecisionMatrix>(text);
    round_trip::<TopsisResult>(text);
    round_trip::<SensitivityReport>(text);
    round_trip::<LeaveOneOutReport>(text);
    round_trip::<ReproReport>(text);
});
