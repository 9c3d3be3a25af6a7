//! TOPSIS ranking: vector normalization, weighting, ideal points,
//! Euclidean separations, relative closeness and rank.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DecisionMatrix, Direction, WeightVector};

/// A dense row-major grid with the shape of a decision matrix.
#[derive(Debug, Clone, PartialEq)]
struct Grid {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Grid {
    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rows).map(move |i| self.data[i * self.cols + j])
    }
}

/// Decision matrix with every column scaled to unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix(Grid);

/// Normalized matrix with each column multiplied by its criterion weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatrix(Grid);

macro_rules! grid_accessors {
    ($t:ty) => {
        impl $t {
            pub fn n_rows(&self) -> usize {
                self.0.rows
            }

            pub fn n_cols(&self) -> usize {
                self.0.cols
            }

            pub fn value(&self, i: usize, j: usize) -> f64 {
                self.0.data[i * self.0.cols + j]
            }

            pub fn row(&self, i: usize) -> &[f64] {
                self.0.row(i)
            }

            pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
                self.0.column(j)
            }
        }
    };
}

grid_accessors!(NormalizedMatrix);
grid_accessors!(WeightedMatrix);

impl WeightedMatrix {
    /// Wraps an arbitrary row-major grid, mostly for exercising
    /// [`ideal_points`] and [`separations`] directly.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "columns",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(WeightedMatrix(Grid {
            rows: rows.len(),
            cols,
            data,
        }))
    }
}

/// Best and worst attainable weighted value per criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoints {
    pub ideal: Vec<f64>,
    pub anti_ideal: Vec<f64>,
}

/// Distances of one alternative from the ideal (`s_plus`) and anti-ideal
/// (`s_minus`) points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    pub s_plus: f64,
    pub s_minus: f64,
}

fn l2_norm(values: impl Iterator<Item = f64>) -> f64 {
    values.map(|v| v * v).sum::<f64>().sqrt()
}

/// `r_ij = x_ij / sqrt(sum_i x_ij^2)`.
pub fn vector_normalize(matrix: &DecisionMatrix) -> Result<NormalizedMatrix> {
    let (m, n) = (matrix.n_alternatives(), matrix.n_criteria());
    let norms = (0..n)
        .map(|j| {
            let norm = l2_norm(matrix.column(j));
            if norm > 0.0 {
                Ok(norm)
            } else {
                Err(Error::ZeroColumn(matrix.criteria()[j].name.clone()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let data = matrix
        .rows()
        .flat_map(|r| r.iter().zip(&norms).map(|(x, norm)| x / norm))
        .collect();
    Ok(NormalizedMatrix(Grid {
        rows: m,
        cols: n,
        data,
    }))
}

pub fn apply_weights(normalized: &NormalizedMatrix, weights: &WeightVector) -> Result<WeightedMatrix> {
    let g = &normalized.0;
    if weights.len() != g.cols {
        return Err(Error::DimensionMismatch {
            what: "weights",
            expected: g.cols,
            found: weights.len(),
        });
    }
    let w = weights.weights();
    let data = g
        .data
        .chunks_exact(g.cols)
        .flat_map(|r| r.iter().zip(w).map(|(r, w)| r * w))
        .collect();
    Ok(WeightedMatrix(Grid {
        rows: g.rows,
        cols: g.cols,
        data,
    }))
}

pub fn ideal_points(weighted: &WeightedMatrix, directions: &[Direction]) -> Result<IdealPoints> {
    let g = &weighted.0;
    if directions.len() != g.cols {
        return Err(Error::DimensionMismatch {
            what: "directions",
            expected: g.cols,
            found: directions.len(),
        });
    }
    let (ideal, anti_ideal) = directions
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let (lo, hi) = g
                .column(j)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            match d {
                Direction::Benefit => (hi, lo),
                Direction::Cost => (lo, hi),
            }
        })
        .unzip();
    Ok(IdealPoints { ideal, anti_ideal })
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    l2_norm(a.iter().zip(b).map(|(x, y)| x - y))
}

pub fn separations(weighted: &WeightedMatrix, points: &IdealPoints) -> Result<Vec<Separation>> {
    let g = &weighted.0;
    if points.ideal.len() != g.cols || points.anti_ideal.len() != g.cols {
        return Err(Error::DimensionMismatch {
            what: "ideal point coordinates",
            expected: g.cols,
            found: points.ideal.len().min(points.anti_ideal.len()),
        });
    }
    Ok((0..g.rows)
        .map(|i| Separation {
            s_plus: distance(g.row(i), &points.ideal),
            s_minus: distance(g.row(i), &points.anti_ideal),
        })
        .collect())
}

/// Relative closeness `s_minus / (s_plus + s_minus)`.
///
/// Returns `None` when both separations are zero.
pub fn closeness(s_plus: f64, s_minus: f64) -> Option<f64> {
    let total = s_plus + s_minus;
    (total > 0.0).then(|| s_minus / total)
}

/// Ranks scores in descending order; rank 1 is the largest.
///
/// Ties go to the earlier index.
pub fn rank(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // sort_by is stable, so equal scores keep index order
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0; scores.len()];
    for (position, &i) in order.iter().enumerate() {
        ranks[i] = position + 1;
    }
    ranks
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopsisRow {
    pub alternative: String,
    pub s_plus: f64,
    pub s_minus: f64,
    pub closeness: f64,
    pub rank: usize,
}

/// Per-alternative separations, closeness and rank, in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TopsisRow>", into = "Vec<TopsisRow>")]
pub struct TopsisResult {
    rows: Vec<TopsisRow>,
}

impl TryFrom<Vec<TopsisRow>> for TopsisResult {
    type Error = Error;

    fn try_from(rows: Vec<TopsisRow>) -> Result<Self> {
        TopsisResult::new(rows)
    }
}

impl From<TopsisResult> for Vec<TopsisRow> {
    fn from(r: TopsisResult) -> Self {
        r.rows
    }
}

impl TopsisResult {
    /// Validates ranges and that the ranks form a permutation of `1..=m`.
    pub fn new(rows: Vec<TopsisRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut seen = vec![false; rows.len()];
        for row in &rows {
            for v in [row.s_plus, row.s_minus] {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::InvalidValue(v.to_string()));
                }
            }
            if !(0.0..=1.0).contains(&row.closeness) {
                return Err(Error::InvalidValue(row.closeness.to_string()));
            }
            match seen.get_mut(row.rank.wrapping_sub(1)) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(Error::InvalidValue(format!("rank {}", row.rank))),
            }
        }
        Ok(TopsisResult { rows })
    }

    pub fn rows(&self) -> &[TopsisRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn closeness(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.closeness).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    /// Index of the rank-1 alternative.
    pub fn top(&self) -> usize {
        self.rows
            .iter()
            .position(|r| r.rank == 1)
            .expect("ranks form a permutation")
    }
}

/// Runs the full TOPSIS pipeline on `matrix` with the given weights.
///
/// A single alternative is rejected: both of its separations are zero.
pub fn topsis_rank(matrix: &DecisionMatrix, weights: &WeightVector) -> Result<TopsisResult> {
    let normalized = vector_normalize(matrix)?;
    let weighted = apply_weights(&normalized, weights)?;
    let points = ideal_points(&weighted, &matrix.directions())?;
    let seps = separations(&weighted, &points)?;
    let scores = seps
        .iter()
        .zip(matrix.alternatives())
        .map(|(s, label)| {
            closeness(s.s_plus, s.s_minus).ok_or_else(|| Error::DegenerateAlternative(label.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let ranks = rank(&scores);
    let rows = matrix
        .alternatives()
        .iter()
        .zip(seps)
        .zip(scores)
        .zip(ranks)
        .map(|(((label, s), c), r)| TopsisRow {
            alternative: label.clone(),
            s_plus: s.s_plus,
            s_minus: s.s_minus,
            closeness: c,
            rank: r,
        })
        .collect();
    TopsisResult::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Criterion, WeightSource};
    use approx::assert_abs_diff_eq;

    fn matrix(rows: Vec<Vec<f64>>, directions: &[Direction]) -> DecisionMatrix {
        let alternatives = (0..rows.len()).map(|i| format!("a{i}")).collect();
        let criteria = directions
            .iter()
            .enumerate()
            .map(|(j, &d)| Criterion::new(format!("c{j}"), d))
            .collect();
        DecisionMatrix::new(alternatives, criteria, rows).unwrap()
    }

    fn equal(n: usize) -> WeightVector {
        WeightVector::from_scores(vec![1.0; n], WeightSource::Equal).unwrap()
    }

    #[test]
    fn normalize_single_row() {
        let n = vector_normalize(&matrix(vec![vec![5.0]], &[Direction::Benefit])).unwrap();
        assert_eq!(n.value(0, 0), 1.0);
    }

    #[test]
    fn normalize_three_four_five() {
        let n = vector_normalize(&matrix(vec![vec![3.0], vec![4.0]], &[Direction::Benefit])).unwrap();
        assert_abs_diff_eq!(n.value(0, 0), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(n.value(1, 0), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn normalize_rejects_zero_column() {
        let m = matrix(vec![vec![1.0, 0.0], vec![2.0, 0.0]], &[Direction::Benefit; 2]);
        assert_eq!(vector_normalize(&m).unwrap_err(), Error::ZeroColumn("c1".into()));
    }

    #[test]
    fn apply_weights_scales_columns() {
        let m = matrix(vec![vec![3.0, 1.0], vec![4.0, 0.0]], &[Direction::Benefit; 2]);
        let n = vector_normalize(&m).unwrap();
        let w = WeightVector::new(vec![0.5, 0.5], WeightSource::Manual).unwrap();
        let v = apply_weights(&n, &w).unwrap();
        assert_abs_diff_eq!(v.value(0, 0), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(v.value(0, 1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(v.value(1, 0), 0.4, epsilon = 1e-15);
        assert_eq!(v.value(1, 1), 0.0);

        let w = WeightVector::new(vec![1.0, 0.0], WeightSource::Manual).unwrap();
        let v = apply_weights(&n, &w).unwrap();
        assert!(v.column(1).all(|x| x == 0.0));

        let w = WeightVector::new(vec![1.0], WeightSource::Manual).unwrap();
        assert!(matches!(apply_weights(&n, &w), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn ideal_points_respect_direction() {
        let v = WeightedMatrix::from_rows(vec![vec![0.2, 0.5], vec![0.4, 0.1]]).unwrap();
        let p = ideal_points(&v, &[Direction::Benefit, Direction::Cost]).unwrap();
        assert_eq!(p.ideal, vec![0.4, 0.1]);
        assert_eq!(p.anti_ideal, vec![0.2, 0.5]);

        let flipped = ideal_points(&v, &[Direction::Cost, Direction::Benefit]).unwrap();
        assert_eq!(flipped.ideal, p.anti_ideal);
        assert_eq!(flipped.anti_ideal, p.ideal);
    }

    #[test]
    fn ideal_points_single_alternative() {
        let v = WeightedMatrix::from_rows(vec![vec![0.2, 0.5]]).unwrap();
        let p = ideal_points(&v, &[Direction::Benefit, Direction::Cost]).unwrap();
        assert_eq!(p.ideal, vec![0.2, 0.5]);
        assert_eq!(p.anti_ideal, p.ideal);
    }

    #[test]
    fn separation_examples() {
        let v = WeightedMatrix::from_rows(vec![vec![0.0, 0.0], vec![0.3, 0.4]]).unwrap();
        let p = IdealPoints {
            ideal: vec![0.3, 0.4],
            anti_ideal: vec![0.0, 0.0],
        };
        let s = separations(&v, &p).unwrap();
        assert_abs_diff_eq!(s[0].s_plus, 0.5, epsilon = 1e-15);
        assert_eq!(s[1].s_plus, 0.0);
        assert_abs_diff_eq!(s[1].s_minus, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn closeness_examples() {
        assert_abs_diff_eq!(closeness(0.055112, 0.089602).unwrap(), 0.619168, epsilon = 1e-5);
        assert_abs_diff_eq!(closeness(0.04766, 0.088131).unwrap(), 0.649020, epsilon = 1e-5);
        assert_eq!(closeness(0.3, 0.0), Some(0.0));
        assert_eq!(closeness(0.0, 0.0), None);
    }

    #[test]
    fn rank_examples() {
        let published = [
            0.619168, 0.605111, 0.619405, 0.64902, 0.477346, 0.387313, 0.383884, 0.385416,
            0.383628, 0.351176, 0.478147,
        ];
        assert_eq!(rank(&published), vec![3, 4, 2, 1, 6, 7, 9, 8, 10, 11, 5]);
        assert_eq!(rank(&[0.5]), vec![1]);
        assert_eq!(rank(&[0.4, 0.4]), vec![1, 2]);
        assert_eq!(rank(&[0.1, 0.4, 0.4]), vec![3, 1, 2]);
    }

    #[test]
    fn single_alternative_is_rejected() {
        let m = matrix(vec![vec![1.0, 2.0]], &[Direction::Benefit; 2]);
        assert_eq!(
            topsis_rank(&m, &equal(2)).unwrap_err(),
            Error::DegenerateAlternative("a0".into())
        );
    }

    #[test]
    fn dominating_alternative_ranks_first() {
        let m = matrix(
            vec![vec![2.0, 5.0, 1.0], vec![4.0, 6.0, 0.5]],
            &[Direction::Benefit, Direction::Benefit, Direction::Cost],
        );
        let r = topsis_rank(&m, &equal(3)).unwrap();
        assert_eq!(r.ranks(), vec![2, 1]);
        assert_eq!(r.rows()[1].closeness, 1.0);
        assert_eq!(r.rows()[0].closeness, 0.0);
    }

    #[test]
    fn result_validation() {
        let row = |rank| TopsisRow {
            alternative: "a".into(),
            s_plus: 0.1,
            s_minus: 0.1,
            closeness: 0.5,
            rank,
        };
        assert!(TopsisResult::new(vec![row(1), row(2)]).is_ok());
        assert!(TopsisResult::new(vec![row(1), row(1)]).is_err());
        assert!(TopsisResult::new(vec![row(0)]).is_err());
        assert!(TopsisResult::new(vec![row(3), row(1)]).is_err());
    }
}
