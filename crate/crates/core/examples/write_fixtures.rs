//! Regenerates `data/study_matrix.csv` and `data/study_ranking.json` from the embedded tables.

use mcdm_core::ingest::serialize_matrix_csv;
use mcdm_core::report::export_json;
use mcdm_core::repro::{builtin_expected, builtin_fixture};

fn main() -> std::io::Result<()> {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    std::fs::write(format!("{root}/study_matrix.csv"), serialize_matrix_csv(&builtin_fixture()))?;
    std::fs::write(
        format!("{root}/study_ranking.json"),
        export_json(&builtin_expected()) + "\n",
    )?;
    Ok(())
}
