//! Straight-line TOPSIS written without any of the library's code paths,
//! used as an independent reference in tests.

#![allow(dead_code, clippy::needless_range_loop)]

pub struct OracleRow {
    pub s_plus: f64,
    pub s_minus: f64,
    pub closeness: f64,
}

/// `values[i][j]`, `benefit[j]`, `weights[j]`.
pub fn topsis(values: &[Vec<f64>], benefit: &[bool], weights: &[f64]) -> Vec<OracleRow> {
    let m = values.len();
    let n = benefit.len();

    let mut v = vec![vec![0.0; n]; m];
    for j in 0..n {
        let mut sq = 0.0;
        for i in 0..m {
            sq += values[i][j] * values[i][j];
        }
        let norm = sq.sqrt();
        for i in 0..m {
            v[i][j] = weights[j] * (values[i][j] / norm);
        }
    }

    let mut best = vec![0.0; n];
    let mut worst = vec![0.0; n];
    for j in 0..n {
        let mut hi = v[0][j];
        let mut lo = v[0][j];
        for i in 1..m {
            if v[i][j] > hi {
                hi = v[i][j];
            }
            if v[i][j] < lo {
                lo = v[i][j];
            }
        }
        if benefit[j] {
            best[j] = hi;
            worst[j] = lo;
        } else {
            best[j] = lo;
            worst[j] = hi;
        }
    }

    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut dp = 0.0;
        let mut dm = 0.0;
        for j in 0..n {
            dp += (v[i][j] - best[j]) * (v[i][j] - best[j]);
            dm += (v[i][j] - worst[j]) * (v[i][j] - worst[j]);
        }
        let s_plus = dp.sqrt();
        let s_minus = dm.sqrt();
        out.push(OracleRow {
            s_plus,
            s_minus,
            closeness: s_minus / (s_plus + s_minus),
        });
    }
    out
}

/// Rank by descending score, ties to the lower index, by counting.
pub fn ranks(scores: &[f64]) -> Vec<usize> {
    (0..scores.len())
        .map(|i| {
            1 + (0..scores.len())
                .filter(|&k| scores[k] > scores[i] || (scores[k] == scores[i] && k < i))
                .count()
        })
        .collect()
}
