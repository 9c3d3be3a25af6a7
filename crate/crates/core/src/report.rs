//! Deterministic renderers: tab-separated text tables, canonical JSON and an
//! SVG bar chart of closeness by alternative.
//!
//! Text tables round reals half-to-even to six decimals. JSON keeps full
//! precision: keys are sorted and every `f64` is written in its shortest
//! round-trip form.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Criterion, WeightSource, WeightVector};
use crate::repro::{ReproMetrics, ReproOutcome, ReproReport};
use crate::sensitivity::SensitivityReport;
use crate::topsis::TopsisResult;
use crate::weighting::AhpOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    TopsisTable,
    WeightTable,
    SensitivityTable,
    ReproTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    pub kind: ReportKind,
    pub body: String,
}

/// Six decimals, ties to even (`{:.6}` rounds the exact binary value).
fn fixed6(v: f64) -> String {
    format!("{v:.6}")
}

/// Columns `Alternative, Si-, Si+, ci, rank` in input order.
pub fn render_topsis_table(result: &TopsisResult) -> ReportDocument {
    let mut body = String::from("Alternative\tSi-\tSi+\tci\trank\n");
    for r in result.rows() {
        let _ = writeln!(
            body,
            "{}\t{}\t{}\t{}\t{}",
            r.alternative,
            fixed6(r.s_minus),
            fixed6(r.s_plus),
            fixed6(r.closeness),
            r.rank
        );
    }
    ReportDocument {
        kind: ReportKind::TopsisTable,
        body,
    }
}

/// Serializable view of a weight vector with its criterion names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSummary {
    pub criteria: Vec<String>,
    pub method: WeightSource,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ahp: Option<AhpSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AhpSummary {
    pub principal_eigenvalue: f64,
    pub consistency_index: f64,
    pub consistency_ratio: Option<f64>,
}

impl WeightSummary {
    pub fn new(criteria: &[Criterion], weights: &WeightVector, ahp: Option<&AhpOutcome>) -> Self {
        WeightSummary {
            criteria: criteria.iter().map(|c| c.name.clone()).collect(),
            method: weights.method(),
            weights: weights.weights().to_vec(),
            ahp: ahp.map(|a| AhpSummary {
                principal_eigenvalue: a.principal_eigenvalue,
                consistency_index: a.consistency_index,
                consistency_ratio: a.consistency_ratio,
            }),
        }
    }
}

pub fn render_weight_table(
    criteria: &[Criterion],
    weights: &WeightVector,
    ahp: Option<&AhpOutcome>,
) -> ReportDocument {
    let mut body = String::from("Criterion\tdirection\tweight\n");
    for (c, w) in criteria.iter().zip(weights.weights()) {
        let _ = writeln!(body, "{}\t{}\t{}", c.name, c.direction, fixed6(*w));
    }
    let _ = writeln!(body, "method\t{}", weights.method());
    if let Some(ahp) = ahp {
        let _ = writeln!(body, "lambda_max\t{}", fixed6(ahp.principal_eigenvalue));
        let _ = writeln!(body, "consistency_index\t{}", fixed6(ahp.consistency_index));
        let cr = ahp.consistency_ratio.map_or_else(|| "undefined".into(), fixed6);
        let _ = writeln!(body, "consistency_ratio\t{cr}");
    }
    ReportDocument {
        kind: ReportKind::WeightTable,
        body,
    }
}

pub fn render_sensitivity_table(report: &SensitivityReport) -> ReportDocument {
    let mut body = String::from("Criterion\tflip_threshold\tgrid_points\n");
    for (j, c) in report.criteria.iter().enumerate() {
        let threshold = c.flip_threshold.map_or_else(|| "none".into(), fixed6);
        let points = report.grid.iter().filter(|p| p.criterion == j).count();
        let _ = writeln!(body, "{}\t{threshold}\t{points}", c.criterion);
    }
    let _ = writeln!(body, "step\t{}", fixed6(report.step));
    let _ = writeln!(body, "max_delta\t{}", fixed6(report.max_delta));
    let _ = writeln!(body, "stability_score\t{}", fixed6(report.stability_score));
    ReportDocument {
        kind: ReportKind::SensitivityTable,
        body,
    }
}

fn metrics_columns(m: &ReproMetrics) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        m.compared_rows,
        fixed6(m.max_abs_ci_delta),
        fixed6(m.mean_abs_ci_delta),
        fixed6(m.max_abs_s_plus_delta),
        fixed6(m.max_abs_s_minus_delta),
        m.exact_rank_matches,
        fixed6(m.kendall_tau),
    )
}

pub fn render_repro_table(report: &ReproReport) -> ReportDocument {
    let mut body = String::from(
        "config\tstatus\tcompared_rows\tmax_abs_ci_delta\tmean_abs_ci_delta\t\
         max_abs_s_plus_delta\tmax_abs_s_minus_delta\texact_rank_matches\tkendall_tau\n",
    );
    let _ = writeln!(
        body,
        "published_separations\tok\t{}",
        metrics_columns(&report.internal_consistency)
    );
    for entry in &report.entries {
        match &entry.outcome {
            ReproOutcome::Ok { metrics, .. } => {
                let _ = writeln!(body, "{}\tok\t{}", entry.config.label(), metrics_columns(metrics));
            }
            ReproOutcome::Failed { error } => {
                let _ = writeln!(body, "{}\tfailed: {error}", entry.config.label());
            }
        }
    }
    let best = report.best_config.map_or_else(|| "none".into(), |c| c.label());
    let _ = writeln!(body, "best_config\t{best}");
    ReportDocument {
        kind: ReportKind::ReproTable,
        body,
    }
}

/// Canonical JSON: sorted keys, shortest round-trip reals, arrays in order.
pub fn export_json<T: Serialize>(value: &T) -> String {
    // serde_json's default map is a BTreeMap, which sorts keys
    let tree = serde_json::to_value(value).expect("report types always serialize");
    tree.to_string()
}

pub fn import_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn escape_xml(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => {}
            c => out.push(c),
        }
    }
    out
}

const BAR_WIDTH: f64 = 36.0;
const BAR_GAP: f64 = 18.0;
const PLOT_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 50.0;
const LABEL_SPACE: f64 = 280.0;

/// Vertical bar chart: one bar per alternative, height proportional to
/// closeness, rank printed above each bar and the alternative label
/// underneath.
pub fn emit_bar_chart(result: &TopsisResult) -> String {
    let m = result.len() as f64;
    let width = MARGIN_LEFT + m * (BAR_WIDTH + BAR_GAP) + MARGIN_RIGHT;
    let height = MARGIN_TOP + PLOT_HEIGHT + LABEL_SPACE;
    let baseline = MARGIN_TOP + PLOT_HEIGHT;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">Closeness coefficient and rank by alternative</text>"#,
        width / 2.0
    );

    for tick in 0..=4 {
        let v = tick as f64 * 0.25;
        let y = baseline - v * PLOT_HEIGHT;
        let _ = writeln!(
            svg,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/>"##,
            MARGIN_LEFT,
            width - MARGIN_RIGHT
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.2}</text>"#,
            MARGIN_LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT:.1}" y1="{baseline:.1}" x2="{:.1}" y2="{baseline:.1}" stroke="black"/>"#,
        width - MARGIN_RIGHT
    );

    for (i, row) in result.rows().iter().enumerate() {
        let x = MARGIN_LEFT + BAR_GAP / 2.0 + i as f64 * (BAR_WIDTH + BAR_GAP);
        let h = row.closeness * PLOT_HEIGHT;
        let cx = x + BAR_WIDTH / 2.0;
        let label = escape_xml(&row.alternative);
        let _ = writeln!(svg, r#"<g class="bar" data-rank="{}">"#, row.rank);
        let _ = writeln!(svg, "<title>{label}: ci = {:.6}, rank {}</title>", row.closeness, row.rank);
        let _ = writeln!(
            svg,
            r##"<rect x="{x:.1}" y="{:.1}" width="{BAR_WIDTH:.1}" height="{h:.1}" fill="#4e79a7"/>"##,
            baseline - h
        );
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            baseline - h - 5.0,
            row.rank
        );
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.1}" y="{:.1}" text-anchor="end" transform="rotate(-60 {cx:.1} {:.1})">{label}</text>"#,
            baseline + 14.0,
            baseline + 14.0
        );
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    svg
}
