//! Multi-criteria decision analysis.
//!
//! The crate covers the full ranking pipeline: building and ingesting
//! decision matrices ([`model`], [`ingest`]), deriving criterion weights
//! ([`weighting`]), ranking alternatives with TOPSIS ([`topsis`]), probing the
//! robustness of a ranking ([`sensitivity`]), rendering results ([`report`])
//! and replaying the bundled job-satisfaction study ([`repro`]).

pub mod error;
pub mod ingest;
pub mod model;
pub mod repro;
pub mod report;
pub mod sensitivity;
pub mod topsis;
pub mod weighting;

pub use error::{Error, Result};
pub use model::{Criterion, DecisionMatrix, Direction, WeightSource, WeightVector};
pub use topsis::{topsis_rank, TopsisResult, TopsisRow};
pub use weighting::{Basis, WeightMethod};
