//! Criterion weighting schemes.
//!
//! Objective schemes (standard deviation, entropy) derive weights from the
//! dispersion of each column. Subjective schemes take them from the caller
//! directly or from an AHP pairwise comparison matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DecisionMatrix, WeightSource, WeightVector};
use crate::topsis::vector_normalize;

/// Which matrix the standard deviation is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Raw,
    #[default]
    VectorNormalized,
}

/// A weighting scheme that can be applied to any compatible matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightMethod {
    Equal,
    StdDev(Basis),
    Entropy,
    Manual(Vec<f64>),
    Ahp(PairwiseMatrix),
}

impl WeightMethod {
    pub fn compute(&self, matrix: &DecisionMatrix) -> Result<WeightVector> {
        let weights = match self {
            WeightMethod::Equal => equal_weights(matrix.n_criteria())?,
            WeightMethod::StdDev(basis) => std_dev_weights(matrix, *basis)?,
            WeightMethod::Entropy => entropy_weights(matrix)?,
            WeightMethod::Manual(values) => manual_weights(values)?,
            WeightMethod::Ahp(pairwise) => ahp_weights(pairwise)?.weights,
        };
        if weights.len() != matrix.n_criteria() {
            return Err(Error::DimensionMismatch {
                what: "weights",
                expected: matrix.n_criteria(),
                found: weights.len(),
            });
        }
        Ok(weights)
    }

    /// Whether the weights depend on the matrix values.
    pub fn is_data_driven(&self) -> bool {
        matches!(self, WeightMethod::StdDev(_) | WeightMethod::Entropy)
    }
}

pub fn equal_weights(n: usize) -> Result<WeightVector> {
    if n == 0 {
        return Err(Error::InvalidArity);
    }
    WeightVector::from_scores(vec![1.0; n], WeightSource::Equal)
}

pub fn manual_weights(values: &[f64]) -> Result<WeightVector> {
    if values.is_empty() {
        return Err(Error::InvalidArity);
    }
    if let Some(&w) = values.iter().find(|w| **w < 0.0) {
        return Err(Error::NegativeWeight(w));
    }
    WeightVector::from_scores(values.to_vec(), WeightSource::Manual)
}

/// Sample standard deviation (divisor `n - 1`). Requires two or more values.
pub(crate) fn sample_std_dev(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Weights proportional to the sample standard deviation of each column.
pub fn std_dev_weights(matrix: &DecisionMatrix, basis: Basis) -> Result<WeightVector> {
    let m = matrix.n_alternatives();
    if m < 2 {
        return Err(Error::InsufficientRows(m));
    }
    let columns: Vec<Vec<f64>> = match basis {
        Basis::Raw => (0..matrix.n_criteria())
            .map(|j| matrix.column(j).collect())
            .collect(),
        Basis::VectorNormalized => {
            let normalized = vector_normalize(matrix)?;
            (0..matrix.n_criteria())
                .map(|j| normalized.column(j).collect())
                .collect()
        }
    };
    let spreads = columns
        .iter()
        .map(|c| {
            // a constant column has exactly zero spread
            if c.iter().all(|&v| v == c[0]) {
                0.0
            } else {
                sample_std_dev(c)
            }
        })
        .collect::<Vec<_>>();
    WeightVector::from_scores(spreads, WeightSource::StdDev).map_err(|e| match e {
        Error::AllZero => Error::DegenerateMatrix,
        other => other,
    })
}

/// Shannon-entropy weights: `w_j ∝ 1 - e_j` with
/// `e_j = -(1 / ln m) Σ_i p_ij ln p_ij` and `p_ij = x_ij / Σ_i x_ij`.
pub fn entropy_weights(matrix: &DecisionMatrix) -> Result<WeightVector> {
    let m = matrix.n_alternatives();
    if m < 2 {
        return Err(Error::InsufficientRows(m));
    }
    let scale = (m as f64).ln();
    let mut divergence = Vec::with_capacity(matrix.n_criteria());
    for (j, criterion) in matrix.criteria().iter().enumerate() {
        let total: f64 = matrix.column(j).sum();
        if total <= 0.0 {
            return Err(Error::ZeroColumn(criterion.name.clone()));
        }
        let first = matrix.value(0, j);
        if matrix.column(j).all(|v| v == first) {
            divergence.push(0.0);
            continue;
        }
        let h: f64 = matrix
            .column(j)
            .map(|x| x / total)
            .filter(|&p| p > 0.0)
            .map(|p| p * p.ln())
            .sum();
        let e = -h / scale;
        divergence.push((1.0 - e).max(0.0));
    }
    WeightVector::from_scores(divergence, WeightSource::Entropy).map_err(|e| match e {
        Error::AllZero => Error::DegenerateMatrix,
        other => other,
    })
}

/// Tolerance for the unit diagonal and `a_ij * a_ji = 1`.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-9;

/// A reciprocal, positive AHP comparison matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    labels: Vec<String>,
    comparisons: Vec<Vec<f64>>,
}

impl PairwiseMatrix {
    pub fn new(labels: Vec<String>, comparisons: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPairwise("no criteria".into()));
        }
        if comparisons.len() != n || comparisons.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPairwise(format!("expected a {n}x{n} matrix")));
        }
        for (i, row) in comparisons.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if !(a.is_finite() && a > 0.0) {
                    return Err(Error::InvalidPairwise(format!(
                        "entry ({}, {}) = {a} is not positive",
                        i + 1,
                        j + 1
                    )));
                }
                let product = a * comparisons[j][i];
                if (product - 1.0).abs() > RECIPROCITY_TOLERANCE {
                    return Err(Error::InvalidPairwise(format!(
                        "entries ({}, {}) and ({}, {}) are not reciprocal",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(PairwiseMatrix {
            labels,
            comparisons,
        })
    }

    /// Builds the perfectly consistent matrix `a_ij = w_i / w_j`.
    pub fn from_priorities(labels: Vec<String>, priorities: &[f64]) -> Result<Self> {
        let comparisons = priorities
            .iter()
            .map(|wi| priorities.iter().map(|wj| wi / wj).collect())
            .collect();
        PairwiseMatrix::new(labels, comparisons)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.comparisons[i][j]
    }

    fn multiply(&self, v: &[f64]) -> Vec<f64> {
        self.comparisons
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Saaty's random consistency index for matrices of order 1 through 10.
pub const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

pub fn random_index(n: usize) -> Option<f64> {
    n.checked_sub(1).and_then(|i| RANDOM_INDEX.get(i)).copied()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AhpOutcome {
    pub weights: WeightVector,
    pub principal_eigenvalue: f64,
    pub consistency_index: f64,
    /// `None` past the end of the random-index table (n > 10).
    pub consistency_ratio: Option<f64>,
    pub iterations: usize,
}

pub const AHP_MAX_ITERATIONS: usize = 10_000;
const AHP_STOP: f64 = 1e-12;
const AHP_ACCEPT: f64 = 1e-9;

/// Principal eigenvector of a pairwise matrix by power iteration.
///
/// Each iterate is rescaled to sum to one. Iteration stops once the largest
/// componentwise change drops below 1e-12; hitting the iteration cap is only
/// an error if the last change is still at least 1e-9.
pub fn ahp_weights(pairwise: &PairwiseMatrix) -> Result<AhpOutcome> {
    let n = pairwise.size();
    let mut w = vec![1.0 / n as f64; n];
    let mut change = f64::INFINITY;
    let mut iterations = 0;
    while iterations < AHP_MAX_ITERATIONS {
        iterations += 1;
        let mut next = pairwise.multiply(&w);
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        change = next
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        w = next;
        if change < AHP_STOP {
            break;
        }
    }
    if change >= AHP_ACCEPT {
        return Err(Error::NonConvergence(iterations));
    }

    let aw = pairwise.multiply(&w);
    let lambda = aw.iter().zip(&w).map(|(a, x)| a / x).sum::<f64>() / n as f64;
    let consistency_index = if n > 2 {
        (lambda - n as f64) / (n as f64 - 1.0)
    } else {
        0.0
    };
    let consistency_ratio = if n > 2 {
        random_index(n).map(|ri| consistency_index / ri)
    } else {
        Some(0.0)
    };
    Ok(AhpOutcome {
        weights: WeightVector::from_scores(w, WeightSource::Ahp)?,
        principal_eigenvalue: lambda,
        consistency_index,
        consistency_ratio,
        iterations,
    })
}
