mod support;

use mcdm_core::weighting::{
    ahp_weights, entropy_weights, equal_weights, manual_weights, std_dev_weights, Basis,
    PairwiseMatrix,
};
use mcdm_core::WeightVector;
use proptest::prelude::*;
use support::matrix_strategy;

fn assert_simplex(w: &WeightVector) -> Result<(), TestCaseError> {
    let sum: f64 = w.weights().iter().sum();
    prop_assert!((sum - 1.0).abs() <= 1e-12, "sum {sum}");
    prop_assert!(w.weights().iter().all(|&x| x >= 0.0));
    Ok(())
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("k{i}")).collect()
}

/// Random reciprocal matrix on Saaty's 1/9..9 scale.
#[allow(clippy::needless_range_loop)]
fn reciprocal(n: usize) -> impl Strategy<Value = PairwiseMatrix> {
    prop::collection::vec(1usize..=17, n * (n - 1) / 2).prop_map(move |picks| {
        let mut a = vec![vec![1.0; n]; n];
        let mut picks = picks.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let p = picks.next().unwrap();
                let v = if p <= 9 { p as f64 } else { 1.0 / (p - 8) as f64 };
                a[i][j] = v;
                a[j][i] = 1.0 / v;
            }
        }
        PairwiseMatrix::new(labels(n), a).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_method_lands_on_the_simplex(m in matrix_strategy(), scores in prop::collection::vec(0.0f64..5.0, 1..8)) {
        if let Ok(w) = std_dev_weights(&m, Basis::Raw) { assert_simplex(&w)?; }
        if let Ok(w) = std_dev_weights(&m, Basis::VectorNormalized) { assert_simplex(&w)?; }
        if let Ok(w) = entropy_weights(&m) { assert_simplex(&w)?; }
        assert_simplex(&equal_weights(m.n_criteria()).unwrap())?;
        if let Ok(w) = manual_weights(&scores) { assert_simplex(&w)?; }
    }

    #[test]
    fn std_dev_raw_ignores_column_shifts(m in matrix_strategy(), column in 0usize..5, shift in 0.0f64..100.0) {
        let j = column % m.n_criteria();
        let shifted = m.map_column(j, |x| x + shift).unwrap();
        match (std_dev_weights(&m, Basis::Raw), std_dev_weights(&shifted, Basis::Raw)) {
            (Ok(a), Ok(b)) => {
                for (x, y) in a.weights().iter().zip(b.weights()) {
                    prop_assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
                }
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }

    #[test]
    fn entropy_ignores_column_scaling(m in matrix_strategy(), column in 0usize..5, factor in 0.01f64..100.0) {
        let j = column % m.n_criteria();
        let scaled = m.map_column(j, |x| x * factor).unwrap();
        if let (Ok(a), Ok(b)) = (entropy_weights(&m), entropy_weights(&scaled)) {
            for (x, y) in a.weights().iter().zip(b.weights()) {
                prop_assert!((x - y).abs() <= 1e-12, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn ahp_recovers_consistent_priorities(raw in prop::collection::vec(0.05f64..1.0, 1..=7)) {
        let total: f64 = raw.iter().sum();
        let truth: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let p = PairwiseMatrix::from_priorities(labels(truth.len()), &truth).unwrap();
        let out = ahp_weights(&p).unwrap();
        for (w, t) in out.weights.weights().iter().zip(&truth) {
            prop_assert!((w - t).abs() <= 1e-9);
        }
        prop_assert!(out.consistency_ratio.unwrap().abs() < 1e-9);
        assert_simplex(&out.weights)?;
    }

    #[test]
    fn principal_eigenvalue_is_at_least_n(p in (3usize..=8).prop_flat_map(reciprocal)) {
        let out = ahp_weights(&p).unwrap();
        prop_assert!(out.principal_eigenvalue >= p.size() as f64 - 1e-9);
        prop_assert!(out.consistency_index >= -1e-9);
        assert_simplex(&out.weights)?;
    }
}
