mod support;

use mcdm_core::ingest::{aggregate_survey, parse_matrix_csv, serialize_matrix_csv, Statistic, SurveyResponse};
use mcdm_core::report::{export_json, import_json};
use mcdm_core::repro::{run_sweep, ReproReport};
use mcdm_core::sensitivity::{rank_stability, SensitivityReport};
use mcdm_core::topsis::{TopsisResult, TopsisRow};
use mcdm_core::{weighting::equal_weights, Criterion, DecisionMatrix};
use proptest::prelude::*;
use support::direction;

fn label() -> impl Strategy<Value = String> {
    "[A-Za-z0-9 _&/().-]{1,12}"
}

fn any_matrix() -> impl Strategy<Value = DecisionMatrix> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(m, n)| {
            (
                prop::collection::btree_set(label(), m),
                prop::collection::btree_set(label(), n),
                prop::collection::vec(direction(), n),
                prop::collection::vec(prop::collection::vec(
                    prop_oneof![0.0f64..1e6, (0u32..100_000).prop_map(|k| k as f64 / 100.0), Just(0.0), 1e-300f64..1e-290],
                    n,
                ), m),
            )
        })
        .prop_map(|(alts, crits, dirs, values)| {
            let criteria = crits.into_iter().zip(dirs).map(|(c, d)| Criterion::new(c, d)).collect();
            DecisionMatrix::new(alts.into_iter().collect(), criteria, values).unwrap()
        })
}

fn any_topsis_result() -> impl Strategy<Value = TopsisResult> {
    (1usize..8)
        .prop_flat_map(|m| {
            (
                prop::collection::vec((0.0f64..10.0, 0.0f64..10.0, 0.0f64..=1.0), m),
                Just((1..=m).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(vals, ranks)| {
            let rows = vals
                .into_iter()
                .zip(ranks)
                .enumerate()
                .map(|(i, ((sp, sm, c), r))| TopsisRow {
                    alternative: format!("alt \"{i}\" ü"),
                    s_plus: sp,
                    s_minus: sm,
                    closeness: c,
                    rank: r,
                })
                .collect();
            TopsisResult::new(rows).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn csv_parse_serialize_is_identity(m in any_matrix()) {
        let text = serialize_matrix_csv(&m);
        let back = parse_matrix_csv(&text).unwrap();
        prop_assert_eq!(&back, &m);
        for (a, b) in back.rows().flatten().zip(m.rows().flatten()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(serialize_matrix_csv(&back), text);
    }

    #[test]
    fn csv_accepts_crlf(m in any_matrix()) {
        let text = serialize_matrix_csv(&m).replace('\n', "\r\n");
        prop_assert_eq!(parse_matrix_csv(&text).unwrap(), m);
    }

    #[test]
    fn topsis_json_round_trip(r in any_topsis_result()) {
        let json = export_json(&r);
        let back: TopsisResult = import_json(&json).unwrap();
        prop_assert_eq!(&back, &r);
        for (a, b) in back.rows().iter().zip(r.rows()) {
            prop_assert_eq!(a.closeness.to_bits(), b.closeness.to_bits());
            prop_assert_eq!(a.s_plus.to_bits(), b.s_plus.to_bits());
        }
    }

    #[test]
    fn matrix_json_round_trip(m in any_matrix()) {
        let back: DecisionMatrix = import_json(&export_json(&m)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn sensitivity_json_round_trip(m in support::matrix_strategy(), step in 0.02f64..0.1) {
        prop_assume!(support::has_spread(&m));
        let report = rank_stability(&m, &equal_weights(m.n_criteria()).unwrap(), step, 0.2).unwrap();
        let back: SensitivityReport = import_json(&export_json(&report)).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn mean_aggregation_ignores_response_order(
        ratings in prop::collection::vec((0usize..3, 0usize..3, 1u32..=5), 1..40),
        seed in any::<u64>(),
    ) {
        // every (group, item) cell gets at least one response
        let mut responses: Vec<SurveyResponse> = (0..3)
            .flat_map(|g| (0..3).map(move |i| SurveyResponse::new(format!("g{g}"), format!("q{i}"), 3.0)))
            .collect();
        responses.extend(ratings.iter().map(|&(g, i, r)| SurveyResponse::new(format!("g{g}"), format!("q{i}"), f64::from(r) * 0.9 + 0.1)));
        let base = aggregate_survey(&responses, Statistic::Mean).unwrap();
        let mut shuffled = responses.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(aggregate_survey(&shuffled, Statistic::Mean).unwrap(), base);
    }
}

#[test]
fn repro_report_json_round_trip() {
    let report = run_sweep();
    let back: ReproReport = import_json(&export_json(&report)).unwrap();
    assert_eq!(back, report);
}
