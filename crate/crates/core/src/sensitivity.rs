//! Ranking robustness: weight perturbation sweeps and leave-one-out rank
//! reversal checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DecisionMatrix, WeightVector};
use crate::topsis::topsis_rank;
use crate::weighting::WeightMethod;

/// Slack allowed when a perturbed weight lands just outside `[0, 1]`.
const FEASIBILITY_SLACK: f64 = 1e-12;

pub const DEFAULT_STEP: f64 = 0.01;
pub const DEFAULT_MAX_DELTA: f64 = 0.25;

/// Shifts weight `j` by `delta` and rescales the others proportionally so the
/// vector still sums to one.
pub fn perturb_weights(weights: &WeightVector, j: usize, delta: f64) -> Result<WeightVector> {
    if j >= weights.len() {
        return Err(Error::DimensionMismatch {
            what: "criterion index bound",
            expected: weights.len(),
            found: j + 1,
        });
    }
    if delta == 0.0 {
        return Ok(weights.clone());
    }
    let target = weights.get(j) + delta;
    if !(-FEASIBILITY_SLACK..=1.0 + FEASIBILITY_SLACK).contains(&target) {
        return Err(Error::OutOfRange(target));
    }
    let target = target.clamp(0.0, 1.0);
    let rest: f64 = weights
        .weights()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, w)| w)
        .sum();
    if rest <= 0.0 {
        return Err(Error::DegenerateBase);
    }
    let scale = (1.0 - target) / rest;
    let perturbed = weights
        .weights()
        .iter()
        .enumerate()
        .map(|(k, &w)| if k == j { target } else { w * scale })
        .collect();
    WeightVector::from_scores(perturbed, weights.method())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionSensitivity {
    pub criterion: String,
    /// Smallest tested `|delta|` that changes the rank-1 alternative.
    pub flip_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub criterion: usize,
    pub delta: f64,
    pub ranks: Vec<usize>,
    pub preserves_top: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityReport {
    pub step: f64,
    pub max_delta: f64,
    pub baseline_ranks: Vec<usize>,
    pub criteria: Vec<CriterionSensitivity>,
    pub grid: Vec<GridPoint>,
    /// Fraction of grid points that keep the baseline rank-1 alternative;
    /// 1 for an empty grid.
    pub stability_score: f64,
}

/// Deltas tested for weight `w`: `±k·step` for `k = 1..=⌊max_delta/step⌋`,
/// ascending, clipped to keep the weight in `[0, 1]`. Clipped duplicates and
/// zero shifts are dropped. A weight of 1 admits no perturbation.
fn feasible_deltas(w: f64, step: f64, max_delta: f64) -> Vec<f64> {
    if w >= 1.0 {
        return Vec::new();
    }
    let steps = (max_delta / step + 1e-9).floor() as usize;
    let lower: Vec<f64> = (1..=steps).map(|k| (-(k as f64) * step).max(-w)).collect();
    let upper: Vec<f64> = (1..=steps).map(|k| (k as f64 * step).min(1.0 - w)).collect();
    let mut out: Vec<f64> = Vec::with_capacity(2 * steps);
    for d in lower.into_iter().rev().chain(upper) {
        if d != 0.0 && out.last() != Some(&d) {
            out.push(d);
        }
    }
    out
}

/// Sweeps each criterion weight over a grid of shifts and reruns TOPSIS.
pub fn rank_stability(
    matrix: &DecisionMatrix,
    weights: &WeightVector,
    step: f64,
    max_delta: f64,
) -> Result<SensitivityReport> {
    if !(step > 0.0 && step <= max_delta && max_delta <= 1.0) {
        return Err(Error::InvalidGrid { step, max_delta });
    }
    let baseline = topsis_rank(matrix, weights)?;
    let top = baseline.top();

    let mut criteria = Vec::with_capacity(matrix.n_criteria());
    let mut grid = Vec::new();
    for (j, criterion) in matrix.criteria().iter().enumerate() {
        let mut flip_threshold: Option<f64> = None;
        for delta in feasible_deltas(weights.get(j), step, max_delta) {
            let perturbed = perturb_weights(weights, j, delta)?;
            let result = topsis_rank(matrix, &perturbed)?;
            let preserves_top = result.top() == top;
            if !preserves_top && flip_threshold.is_none_or(|t| delta.abs() < t) {
                flip_threshold = Some(delta.abs());
            }
            grid.push(GridPoint {
                criterion: j,
                delta,
                ranks: result.ranks(),
                preserves_top,
            });
        }
        criteria.push(CriterionSensitivity {
            criterion: criterion.name.clone(),
            flip_threshold,
        });
    }
    let stability_score = if grid.is_empty() {
        1.0
    } else {
        grid.iter().filter(|p| p.preserves_top).count() as f64 / grid.len() as f64
    };
    Ok(SensitivityReport {
        step,
        max_delta,
        baseline_ranks: baseline.ranks(),
        criteria,
        grid,
        stability_score,
    })
}

/// A surviving pair whose relative order flipped; `ahead` led in the baseline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reversal {
    pub ahead: String,
    pub behind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemovalRun {
    pub removed: String,
    /// Ranks of the survivors, in their original order; empty when the
    /// reduced problem could not be ranked.
    pub ranks: Vec<usize>,
    pub reversals: Vec<Reversal>,
    /// Why the reduced problem could not be ranked, e.g. only identical
    /// alternatives survive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeaveOneOutReport {
    pub baseline_ranks: Vec<usize>,
    pub weights_recomputed: bool,
    pub runs: Vec<RemovalRun>,
}

impl LeaveOneOutReport {
    pub fn has_reversal(&self) -> bool {
        self.runs.iter().any(|r| !r.reversals.is_empty())
    }
}

/// Removes each alternative in turn and reports order changes among the
/// survivors.
///
/// Weights are held fixed unless `recompute` names a method, in which case
/// they are rederived from every reduced matrix. A reduced problem that
/// cannot be ranked is recorded in its run rather than failing the report.
pub fn leave_one_out(
    matrix: &DecisionMatrix,
    weights: &WeightVector,
    recompute: Option<&WeightMethod>,
) -> Result<LeaveOneOutReport> {
    let m = matrix.n_alternatives();
    if m < 3 {
        return Err(Error::TooFewAlternatives(m));
    }
    let baseline = topsis_rank(matrix, weights)?.ranks();
    let labels = matrix.alternatives();

    let mut runs = Vec::with_capacity(m);
    for k in 0..m {
        let reduced = matrix.without_row(k)?;
        let ranked = match recompute {
            Some(method) => method.compute(&reduced),
            None => Ok(weights.clone()),
        }
        .and_then(|w| topsis_rank(&reduced, &w));
        let ranks = match ranked {
            Ok(result) => result.ranks(),
            Err(e) => {
                runs.push(RemovalRun {
                    removed: labels[k].clone(),
                    ranks: Vec::new(),
                    reversals: Vec::new(),
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        let survivors: Vec<usize> = (0..m).filter(|&i| i != k).collect();

        let mut reversals = Vec::new();
        for a in 0..survivors.len() {
            for b in a + 1..survivors.len() {
                let (ia, ib) = (survivors[a], survivors[b]);
                let before = baseline[ia] < baseline[ib];
                let after = ranks[a] < ranks[b];
                if before != after {
                    let (ahead, behind) = if before { (ia, ib) } else { (ib, ia) };
                    reversals.push(Reversal {
                        ahead: labels[ahead].clone(),
                        behind: labels[behind].clone(),
                    });
                }
            }
        }
        runs.push(RemovalRun {
            removed: labels[k].clone(),
            ranks,
            reversals,
            error: None,
        });
    }
    Ok(LeaveOneOutReport {
        baseline_ranks: baseline,
        weights_recomputed: recompute.is_some(),
        runs,
    })
}
