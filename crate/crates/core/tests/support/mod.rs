#![allow(dead_code)]

pub mod oracle;

use mcdm_core::{Criterion, DecisionMatrix, Direction};
use proptest::prelude::*;

pub fn build(values: Vec<Vec<f64>>, directions: &[Direction]) -> DecisionMatrix {
    let alternatives = (0..values.len()).map(|i| format!("a{i}")).collect();
    let criteria = directions
        .iter()
        .enumerate()
        .map(|(j, &d)| Criterion::new(format!("c{j}"), d))
        .collect();
    DecisionMatrix::new(alternatives, criteria, values).unwrap()
}

pub fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Benefit), Just(Direction::Cost)]
}

/// Ratings in (0, 10].
pub fn rating() -> impl Strategy<Value = f64> {
    (1u32..=10_000_000).prop_map(|k| k as f64 / 1_000_000.0)
}

/// An m × n matrix with m in 2..=6 and n in 1..=5, all ratings in (0, 10].
pub fn matrix_strategy() -> impl Strategy<Value = DecisionMatrix> {
    (2usize..=6, 1usize..=5)
        .prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(prop::collection::vec(rating(), n), m),
                prop::collection::vec(direction(), n),
            )
        })
        .prop_map(|(values, directions)| build(values, &directions))
}

/// Positive raw scores for `n` weights.
pub fn weight_scores(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1u32..=1000, n).prop_map(|v| v.into_iter().map(f64::from).collect())
}

pub fn rows(m: &DecisionMatrix) -> Vec<Vec<f64>> {
    m.rows().map(<[f64]>::to_vec).collect()
}

/// Whether the matrix has two or more distinct rows, so TOPSIS is defined.
pub fn has_spread(m: &DecisionMatrix) -> bool {
    m.rows().any(|r| r != m.row(0))
}
