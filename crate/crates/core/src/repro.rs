//! Replays the job-satisfaction study bundled with the crate.
//!
//! The study publishes a 9 × 11 decision matrix (nine numbered alternatives
//! rated on eleven job-satisfaction parameters) and a ranking table with
//! eleven rows of `Si-`, `Si+`, `ci` and rank. Its pipeline is not fully
//! specified: the matrix orientation, the dispersion basis of the
//! standard-deviation weights, and the meaning of rows 6–9 are all open. The
//! harness therefore evaluates a fixed set of configurations and measures
//! how closely each one matches the published table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Criterion, DecisionMatrix, Direction};
use crate::topsis::{rank, topsis_rank, TopsisResult, TopsisRow};
use crate::weighting::{Basis, WeightMethod};

pub const PARAMETERS: [&str; 11] = [
    "Average working hours",
    "Satisfy with the pay scale with respect to the work load",
    "Do you get ample opportunities at workplace to develop a skill",
    "Satisfied with the working environment in an organization",
    "Satisfied by the appraisals given by management",
    "Satisfied with the nature of work allotted",
    "Get the appreciation of the work/tasks conducted",
    "Satisfied with the behaviour of peer employees in an organization",
    "Satisfied with the policies and rules & regulation by the management",
    "Satisfy with the designation allotted in an organization",
    "Seeking to change the job if got a high pay scale",
];

const RATINGS: [[f64; 11]; 9] = [
    [3.53, 3.64, 4.09, 3.82, 3.91, 3.48, 3.79, 3.23, 3.8, 3.93, 4.13],
    [4.08, 3.8, 3.52, 3.61, 3.46, 3.28, 3.3, 3.94, 3.66, 3.59, 3.84],
    [3.5, 4.11, 3.92, 3.66, 4.05, 3.87, 3.84, 4.12, 3.92, 4.11, 3.3],
    [3.35, 3.76, 3.15, 3.31, 3.94, 3.62, 3.79, 3.44, 3.46, 4.07, 3.93],
    [4.13, 3.3, 3.94, 3.8, 3.96, 4.13, 3.55, 3.43, 3.2, 0.92, 0.82],
    [1.03, 0.95, 0.92, 0.91, 1.25, 1.04, 0.95, 1.16, 0.95, 1.01, 1.11],
    [1.0, 0.99, 0.93, 1.05, 0.96, 0.93, 1.02, 0.88, 1.22, 1.15, 0.91],
    [1.23, 1.01, 0.8, 1.32, 1.67, 0.89, 0.98, 0.96, 0.91, 0.93, 0.92],
    [0.96, 0.96, 1.04, 1.2, 1.67, 0.87, 0.96, 0.98, 0.95, 0.97, 0.91],
];

/// `(Si-, Si+, ci, rank)` per parameter, as published.
const PUBLISHED: [(f64, f64, f64, usize); 11] = [
    (0.089602, 0.055112, 0.619168, 3),
    (0.08404, 0.054844, 0.605111, 4),
    (0.091001, 0.055916, 0.619405, 2),
    (0.088131, 0.04766, 0.64902, 1),
    (0.071592, 0.078387, 0.477346, 6),
    (0.058143, 0.091976, 0.387313, 7),
    (0.057905, 0.092936, 0.383884, 9),
    (0.058012, 0.092506, 0.385416, 8),
    (0.057692, 0.092693, 0.383628, 10),
    (0.047449, 0.087666, 0.351176, 11),
    (0.060185, 0.065686, 0.478147, 5),
];

/// The published decision matrix; the first three parameters are cost
/// criteria, the rest benefit criteria.
pub fn builtin_fixture() -> DecisionMatrix {
    let alternatives = (1..=RATINGS.len()).map(|i| i.to_string()).collect();
    let criteria = PARAMETERS
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let direction = if j < 3 { Direction::Cost } else { Direction::Benefit };
            Criterion::new(*name, direction)
        })
        .collect();
    let values = RATINGS.iter().map(|r| r.to_vec()).collect();
    DecisionMatrix::new(alternatives, criteria, values).expect("fixture is valid")
}

/// The published ranking table.
pub fn builtin_expected() -> TopsisResult {
    let rows = PARAMETERS
        .iter()
        .zip(PUBLISHED)
        .map(|(name, (s_minus, s_plus, closeness, rank))| TopsisRow {
            alternative: name.to_string(),
            s_plus,
            s_minus,
            closeness,
            rank,
        })
        .collect();
    TopsisResult::new(rows).expect("published table is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Nine numbered alternatives rated on eleven parameters.
    AsPrinted,
    /// Eleven parameters ranked as alternatives over nine benefit criteria.
    Transposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReproWeighting {
    StdDevRaw,
    StdDevNormalized,
    Equal,
    Entropy,
}

impl ReproWeighting {
    pub const ALL: [ReproWeighting; 4] = [
        ReproWeighting::StdDevRaw,
        ReproWeighting::StdDevNormalized,
        ReproWeighting::Equal,
        ReproWeighting::Entropy,
    ];

    pub fn method(self) -> WeightMethod {
        match self {
            ReproWeighting::StdDevRaw => WeightMethod::StdDev(Basis::Raw),
            ReproWeighting::StdDevNormalized => WeightMethod::StdDev(Basis::VectorNormalized),
            ReproWeighting::Equal => WeightMethod::Equal,
            ReproWeighting::Entropy => WeightMethod::Entropy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSubset {
    AllRows,
    /// Only the first five rows, which sit on the 1–5 rating scale.
    Rows1To5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproConfig {
    pub orientation: Orientation,
    pub weight_method: ReproWeighting,
    pub row_subset: RowSubset,
}

impl ReproConfig {
    pub fn is_valid(&self) -> bool {
        self.row_subset == RowSubset::AllRows || self.orientation == Orientation::Transposed
    }

    /// Every valid configuration, in sweep order: orientation, then row
    /// subset, then weighting.
    pub fn all() -> Vec<ReproConfig> {
        let mut out = Vec::new();
        for orientation in [Orientation::AsPrinted, Orientation::Transposed] {
            for row_subset in [RowSubset::AllRows, RowSubset::Rows1To5] {
                for weight_method in ReproWeighting::ALL {
                    let config = ReproConfig {
                        orientation,
                        weight_method,
                        row_subset,
                    };
                    if config.is_valid() {
                        out.push(config);
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let orientation = match self.orientation {
            Orientation::AsPrinted => "as_printed",
            Orientation::Transposed => "transposed",
        };
        let weights = match self.weight_method {
            ReproWeighting::StdDevRaw => "std_dev_raw",
            ReproWeighting::StdDevNormalized => "std_dev_normalized",
            ReproWeighting::Equal => "equal",
            ReproWeighting::Entropy => "entropy",
        };
        let rows = match self.row_subset {
            RowSubset::AllRows => "all_rows",
            RowSubset::Rows1To5 => "rows_1_to_5",
        };
        format!("{orientation}/{rows}/{weights}")
    }

    /// The decision matrix this configuration ranks.
    pub fn matrix(&self) -> Result<DecisionMatrix> {
        if !self.is_valid() {
            return Err(Error::InvalidValue(self.label()));
        }
        let fixture = builtin_fixture();
        let rows = match self.row_subset {
            RowSubset::AllRows => fixture,
            RowSubset::Rows1To5 => fixture.select_rows(&[0, 1, 2, 3, 4])?,
        };
        match self.orientation {
            Orientation::AsPrinted => Ok(rows),
            Orientation::Transposed => {
                let directions = vec![Direction::Benefit; rows.n_alternatives()];
                rows.transpose(&directions)
            }
        }
    }
}

/// Agreement between a computed ranking and the published one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproMetrics {
    /// Published rows compared, taken positionally from the top of the table.
    pub compared_rows: usize,
    pub max_abs_ci_delta: f64,
    pub mean_abs_ci_delta: f64,
    pub max_abs_s_plus_delta: f64,
    pub max_abs_s_minus_delta: f64,
    /// Rows whose rank, taken within the compared rows, matches.
    pub exact_rank_matches: usize,
    pub kendall_tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReproOutcome {
    Ok {
        metrics: ReproMetrics,
        computed: TopsisResult,
    },
    Failed {
        error: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproEntry {
    pub config: ReproConfig,
    pub outcome: ReproOutcome,
}

impl ReproEntry {
    pub fn metrics(&self) -> Option<&ReproMetrics> {
        match &self.outcome {
            ReproOutcome::Ok { metrics, .. } => Some(metrics),
            ReproOutcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproReport {
    /// Closeness recomputed from the published separations alone.
    pub internal_consistency: ReproMetrics,
    pub entries: Vec<ReproEntry>,
    pub best_config: Option<ReproConfig>,
}

impl ReproReport {
    pub fn best(&self) -> Option<&ReproEntry> {
        let best = self.best_config?;
        self.entries.iter().find(|e| e.config == best)
    }
}

/// Kendall's tau-a between two rankings of the same items.
pub fn kendall_tau(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len().min(b.len());
    if n < 2 {
        return 1.0;
    }
    let mut score = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let x = (a[i] as i64 - a[j] as i64).signum();
            let y = (b[i] as i64 - b[j] as i64).signum();
            score += x * y;
        }
    }
    score as f64 / (n * (n - 1) / 2) as f64
}

/// Ranks of `ranks[..k]` among themselves.
fn rerank_prefix(ranks: &[usize], k: usize) -> Vec<usize> {
    let negated: Vec<f64> = ranks[..k].iter().map(|&r| -(r as f64)).collect();
    rank(&negated)
}

/// Compares `computed` with the first `computed.len()` rows of `expected`.
pub fn compare(computed: &TopsisResult, expected: &TopsisResult) -> Result<ReproMetrics> {
    let k = computed.len();
    if k > expected.len() {
        return Err(Error::DimensionMismatch {
            what: "published rows",
            expected: k,
            found: expected.len(),
        });
    }
    let pairs = || computed.rows().iter().zip(expected.rows());
    let max_abs = |f: fn(&TopsisRow) -> f64| pairs().map(|(c, e)| (f(c) - f(e)).abs()).fold(0.0, f64::max);
    let ci_total: f64 = pairs().map(|(c, e)| (c.closeness - e.closeness).abs()).sum();

    let computed_ranks = computed.ranks();
    let expected_ranks = rerank_prefix(&expected.ranks(), k);
    let exact_rank_matches = computed_ranks
        .iter()
        .zip(&expected_ranks)
        .filter(|(a, b)| a == b)
        .count();
    Ok(ReproMetrics {
        compared_rows: k,
        max_abs_ci_delta: max_abs(|r| r.closeness),
        mean_abs_ci_delta: ci_total / k as f64,
        max_abs_s_plus_delta: max_abs(|r| r.s_plus),
        max_abs_s_minus_delta: max_abs(|r| r.s_minus),
        exact_rank_matches,
        kendall_tau: kendall_tau(&computed_ranks, &expected_ranks),
    })
}

/// Recomputes every `ci` from the published separations and ranks the result.
pub fn internal_consistency() -> ReproMetrics {
    let published = builtin_expected();
    let closeness: Vec<f64> = published
        .rows()
        .iter()
        .map(|r| r.s_minus / (r.s_plus + r.s_minus))
        .collect();
    let rows = published
        .rows()
        .iter()
        .zip(&closeness)
        .zip(rank(&closeness))
        .map(|((r, &c), rank)| TopsisRow {
            closeness: c,
            rank,
            ..r.clone()
        })
        .collect();
    let recomputed = TopsisResult::new(rows).expect("recomputed table is valid");
    compare(&recomputed, &published).expect("same shape")
}

fn run_config(config: &ReproConfig) -> Result<(ReproMetrics, TopsisResult)> {
    let matrix = config.matrix()?;
    let weights = config.weight_method.method().compute(&matrix)?;
    let computed = topsis_rank(&matrix, &weights)?;
    let metrics = compare(&computed, &builtin_expected())?;
    Ok((metrics, computed))
}

/// Evaluates one configuration. Failures are recorded, never raised.
pub fn reproduce(config: &ReproConfig) -> ReproEntry {
    let outcome = match run_config(config) {
        Ok((metrics, computed)) => ReproOutcome::Ok { metrics, computed },
        Err(e) => ReproOutcome::Failed {
            error: e.to_string(),
        },
    };
    ReproEntry {
        config: *config,
        outcome,
    }
}

/// Evaluates every configuration and picks the one with the smallest mean
/// closeness error, then the higher Kendall tau, then sweep order.
pub fn run_sweep() -> ReproReport {
    let entries: Vec<ReproEntry> = ReproConfig::all().iter().map(reproduce).collect();
    let mut best: Option<(&ReproEntry, &ReproMetrics)> = None;
    for entry in &entries {
        let Some(m) = entry.metrics() else { continue };
        let better = match best {
            None => true,
            Some((_, b)) => {
                m.mean_abs_ci_delta < b.mean_abs_ci_delta
                    || (m.mean_abs_ci_delta == b.mean_abs_ci_delta && m.kendall_tau > b.kendall_tau)
            }
        };
        if better {
            best = Some((entry, m));
        }
    }
    let best_config = best.map(|(e, _)| e.config);
    ReproReport {
        internal_consistency: internal_consistency(),
        entries,
        best_config,
    }
}
