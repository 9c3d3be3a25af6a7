#![no_main]

use libfuzzer_sys::fuzz_target;
use mcdm_core::ingest::{parse_matrix_csv, serialize_matrix_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(matrix) = parse_matrix_csv(text) else { return };
    let written = serialize_matrix_csv(&matrix);
    let reparsed = parse_matrix_csv(&written).expect("serialized matrix parses");
    assert_eq!(reparsed, matrix);
    assert_eq!(serialize_matrix_csv(&reparsed), written);
});
