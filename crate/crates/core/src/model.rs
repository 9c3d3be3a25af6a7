//! Immutable value types describing a decision problem.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether larger (`Benefit`) or smaller (`Cost`) ratings are preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Benefit,
    Cost,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Benefit => "benefit",
            Direction::Cost => "cost",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Direction::Benefit => Direction::Cost,
            Direction::Cost => Direction::Benefit,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = Error;

    /// Accepts `benefit` or `cost` in any letter case.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("benefit") {
            Ok(Direction::Benefit)
        } else if s.eq_ignore_ascii_case("cost") {
            Ok(Direction::Cost)
        } else {
            Err(Error::UnknownDirectionToken(s.to_string()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub direction: Direction,
}

impl Criterion {
    pub fn new(name: impl Into<String>, direction: Direction) -> Self {
        Criterion {
            name: name.into(),
            direction,
        }
    }

    pub fn benefit(name: impl Into<String>) -> Self {
        Self::new(name, Direction::Benefit)
    }

    pub fn cost(name: impl Into<String>) -> Self {
        Self::new(name, Direction::Cost)
    }
}

/// An alternatives × criteria grid of nonnegative ratings.
///
/// Values are stored row-major. A matrix is validated once on construction
/// and never mutated; every transformation returns a new matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<Criterion>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    alternatives: Vec<String>,
    criteria: Vec<Criterion>,
    values: Vec<Vec<f64>>,
}

impl TryFrom<RawMatrix> for DecisionMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        DecisionMatrix::new(raw.alternatives, raw.criteria, raw.values)
    }
}

impl From<DecisionMatrix> for RawMatrix {
    fn from(m: DecisionMatrix) -> Self {
        let values = m.rows().map(<[f64]>::to_vec).collect();
        RawMatrix {
            alternatives: m.alternatives,
            criteria: m.criteria,
            values,
        }
    }
}

fn check_labels<'a>(labels: impl IntoIterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for label in labels {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if !seen.insert(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
    }
    Ok(())
}

impl DecisionMatrix {
    /// Builds a validated matrix from row-wise values.
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<Criterion>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if alternatives.is_empty() || criteria.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if values.len() != alternatives.len() {
            return Err(Error::DimensionMismatch {
                what: "rows",
                expected: alternatives.len(),
                found: values.len(),
            });
        }
        check_labels(alternatives.iter().map(String::as_str))?;
        check_labels(criteria.iter().map(|c| c.name.as_str()))?;

        let n = criteria.len();
        let mut flat = Vec::with_capacity(alternatives.len() * n);
        for row in values {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "columns",
                    expected: n,
                    found: row.len(),
                });
            }
            for v in row {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidValue(v.to_string()));
                }
                flat.push(v);
            }
        }
        Ok(DecisionMatrix {
            alternatives,
            criteria,
            values: flat,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.criteria.iter().map(|c| c.direction).collect()
    }

    /// Number of alternatives (rows).
    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    /// Number of criteria (columns).
    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn value(&self, alternative: usize, criterion: usize) -> f64 {
        self.values[alternative * self.n_criteria() + criterion]
    }

    pub fn row(&self, alternative: usize) -> &[f64] {
        let n = self.n_criteria();
        &self.values[alternative * n..(alternative + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.n_criteria())
    }

    pub fn column(&self, criterion: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows().map(move |r| r[criterion])
    }

    /// Swaps the axes: criteria become alternatives and vice versa.
    ///
    /// The former alternative labels become criterion names, with one
    /// direction supplied per former row.
    pub fn transpose(&self, new_directions: &[Direction]) -> Result<Self> {
        if new_directions.len() != self.n_alternatives() {
            return Err(Error::DimensionMismatch {
                what: "directions",
                expected: self.n_alternatives(),
                found: new_directions.len(),
            });
        }
        let alternatives = self.criteria.iter().map(|c| c.name.clone()).collect();
        let criteria = self
            .alternatives
            .iter()
            .zip(new_directions)
            .map(|(name, &d)| Criterion::new(name.clone(), d))
            .collect();
        let values = (0..self.n_criteria())
            .map(|j| self.column(j).collect())
            .collect();
        DecisionMatrix::new(alternatives, criteria, values)
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let alternatives = rows.iter().map(|&i| self.alternatives[i].clone()).collect();
        let values = rows.iter().map(|&i| self.row(i).to_vec()).collect();
        DecisionMatrix::new(alternatives, self.criteria.clone(), values)
    }

    pub fn without_row(&self, row: usize) -> Result<Self> {
        let keep: Vec<usize> = (0..self.n_alternatives()).filter(|&i| i != row).collect();
        self.select_rows(&keep)
    }

    /// Returns a copy with criterion `j`'s column replaced by `f(value)`.
    pub fn map_column(&self, j: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = self
            .rows()
            .map(|r| {
                let mut r = r.to_vec();
                r[j] = f(r[j]);
                r
            })
            .collect();
        DecisionMatrix::new(self.alternatives.clone(), self.criteria.clone(), values)
    }
}

/// The procedure that produced a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSource {
    StdDev,
    Entropy,
    Equal,
    Manual,
    Ahp,
}

impl WeightSource {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightSource::StdDev => "std_dev",
            WeightSource::Entropy => "entropy",
            WeightSource::Equal => "equal",
            WeightSource::Manual => "manual",
            WeightSource::Ahp => "ahp",
        }
    }
}

impl fmt::Display for WeightSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerance on the sum of a weight vector.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Nonnegative criterion weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeights")]
pub struct WeightVector {
    weights: Vec<f64>,
    method: WeightSource,
}

#[derive(Deserialize)]
struct RawWeights {
    weights: Vec<f64>,
    method: WeightSource,
}

impl TryFrom<RawWeights> for WeightVector {
    type Error = Error;

    fn try_from(raw: RawWeights) -> Result<Self> {
        WeightVector::new(raw.weights, raw.method)
    }
}

impl WeightVector {
    /// Wraps weights that already lie on the unit simplex.
    pub fn new(weights: Vec<f64>, method: WeightSource) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArity);
        }
        for &w in &weights {
            if !w.is_finite() {
                return Err(Error::InvalidValue(w.to_string()));
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight(w));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::NotNormalized(sum));
        }
        Ok(WeightVector { weights, method })
    }

    /// Divides nonnegative scores by their sum.
    pub fn from_scores(scores: Vec<f64>, method: WeightSource) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::InvalidArity);
        }
        for &s in &scores {
            if !s.is_finite() {
                return Err(Error::InvalidValue(s.to_string()));
            }
            if s < 0.0 {
                return Err(Error::NegativeWeight(s));
            }
        }
        let total: f64 = scores.iter().sum();
        if total <= 0.0 {
            return Err(Error::AllZero);
        }
        let weights = scores.into_iter().map(|s| s / total).collect();
        WeightVector::new(weights, method)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn method(&self) -> WeightSource {
        self.method
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, j: usize) -> f64 {
        self.weights[j]
    }

    /// Reorders the weights; `order[k]` is the old index placed at position `k`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        WeightVector {
            weights: order.iter().map(|&j| self.weights[j]).collect(),
            method: self.method,
        }
    }
}
