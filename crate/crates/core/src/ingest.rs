//! Text input formats and survey aggregation.
//!
//! Decision-matrix CSV:
//!
//! ```text
//! ,<criterion 1>,<criterion 2>,...
//! direction,<benefit|cost>,<benefit|cost>,...
//! <alternative>,<value>,<value>,...
//! ```
//!
//! Fields are split on bare commas; quoting is not supported, so labels can
//! never contain a comma, a double quote or a carriage return. Values are plain decimals (`.`
//! separator, no exponent, no thousands separators). Both LF and CRLF line
//! endings are accepted; output always uses LF.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Criterion, DecisionMatrix, Direction};
use crate::weighting::{sample_std_dev, PairwiseMatrix};

/// Yields `(line_number, line)` for every line, skipping one trailing empty
/// line and stripping a trailing `\r`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let text = text
        .strip_suffix("\r\n")
        .or_else(|| text.strip_suffix('\n'))
        .unwrap_or(text);
    text.split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

/// Checks the plain-decimal grammar `[+-]?(digits[.digits*] | .digits)`.
fn is_plain_decimal(token: &str) -> bool {
    let body = token.strip_prefix(['+', '-']).unwrap_or(token);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !digits(int) || !frac.is_none_or(digits) {
        return false;
    }
    !int.is_empty() || frac.is_some_and(|f| !f.is_empty())
}

pub(crate) fn parse_decimal(token: &str) -> Result<f64> {
    let token = token.trim();
    if !is_plain_decimal(token) {
        return Err(Error::InvalidValue(token.to_string()));
    }
    token
        .parse::<f64>()
        .map_err(|_| Error::InvalidValue(token.to_string()))
}

fn check_field_label(label: &str, on_error: impl Fn(String) -> Error) -> Result<()> {
    if label.contains('"') {
        return Err(on_error(format!("quoted field {label}")));
    }
    if label.contains('\r') {
        return Err(on_error(format!("carriage return in field {label:?}")));
    }
    Ok(())
}

/// Parses the decision-matrix CSV format.
pub fn parse_matrix_csv(text: &str) -> Result<DecisionMatrix> {
    let mut lines = lines(text);

    let (_, header) = lines
        .next()
        .filter(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::MalformedHeader("missing header line".into()))?;
    let mut fields = header.split(',');
    if fields.next() != Some("") {
        return Err(Error::MalformedHeader(
            "header must start with an empty cell".into(),
        ));
    }
    let names: Vec<&str> = fields.collect();
    if names.is_empty() {
        return Err(Error::MalformedHeader("no criteria".into()));
    }
    for name in &names {
        if name.is_empty() {
            return Err(Error::MalformedHeader("empty criterion name".into()));
        }
        check_field_label(name, Error::MalformedHeader)?;
    }

    let (line_no, direction_line) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("missing direction line".into()))?;
    let mut fields = direction_line.split(',');
    if !fields
        .next()
        .is_some_and(|f| f.eq_ignore_ascii_case("direction"))
    {
        return Err(Error::MalformedHeader(
            "second line must start with \"direction\"".into(),
        ));
    }
    let tokens: Vec<&str> = fields.collect();
    if tokens.len() != names.len() {
        return Err(Error::RaggedRow {
            line: line_no,
            expected: names.len() + 1,
            found: tokens.len() + 1,
        });
    }
    let criteria = names
        .iter()
        .zip(&tokens)
        .map(|(name, token)| Ok(Criterion::new(*name, token.trim().parse()?)))
        .collect::<Result<Vec<_>>>()?;

    let mut alternatives = Vec::new();
    let mut values = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() + 1 {
            return Err(Error::RaggedRow {
                line: line_no,
                expected: names.len() + 1,
                found: fields.len(),
            });
        }
        check_field_label(fields[0], |_| Error::MalformedRow(line_no))?;
        alternatives.push(fields[0].to_string());
        values.push(
            fields[1..]
                .iter()
                .map(|t| parse_decimal(t))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    DecisionMatrix::new(alternatives, criteria, values)
}

/// Writes `matrix` in the decision-matrix CSV format.
///
/// Values use the shortest decimal form that parses back to the same `f64`.
pub fn serialize_matrix_csv(matrix: &DecisionMatrix) -> String {
    let mut out = String::new();
    for c in matrix.criteria() {
        out.push(',');
        out.push_str(&c.name);
    }
    out.push_str("\ndirection");
    for c in matrix.criteria() {
        out.push(',');
        out.push_str(c.direction.as_str());
    }
    out.push('\n');
    for (label, row) in matrix.alternatives().iter().zip(matrix.rows()) {
        out.push_str(label);
        for v in row {
            // f64's Display never switches to exponent notation
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Parses an AHP comparison matrix: a header row of `n` labels followed by
/// `n` rows of `n` positive decimals.
pub fn parse_pairwise_csv(text: &str) -> Result<PairwiseMatrix> {
    let mut lines = lines(text);
    let (_, header) = lines
        .next()
        .filter(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::MalformedHeader("missing header line".into()))?;
    let labels: Vec<String> = header.split(',').map(str::to_string).collect();
    for label in &labels {
        if label.is_empty() {
            return Err(Error::MalformedHeader("empty criterion name".into()));
        }
        check_field_label(label, Error::MalformedHeader)?;
    }
    let n = labels.len();
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n {
            return Err(Error::RaggedRow {
                line: line_no,
                expected: n,
                found: fields.len(),
            });
        }
        rows.push(
            fields
                .iter()
                .map(|t| parse_decimal(t))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            what: "pairwise rows",
            expected: n,
            found: rows.len(),
        });
    }
    PairwiseMatrix::new(labels, rows)
}

/// Inclusive rating range of a Likert scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LikertScale {
    pub min: f64,
    pub max: f64,
}

impl Default for LikertScale {
    fn default() -> Self {
        LikertScale { min: 1.0, max: 5.0 }
    }
}

impl LikertScale {
    pub fn contains(&self, rating: f64) -> bool {
        rating >= self.min && rating <= self.max
    }
}

/// One answer to one questionnaire item.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyResponse {
    pub group: String,
    pub item: String,
    pub rating: f64,
}

impl SurveyResponse {
    pub fn new(group: impl Into<String>, item: impl Into<String>, rating: f64) -> Self {
        SurveyResponse {
            group: group.into(),
            item: item.into(),
            rating,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Mean,
    /// Sample standard deviation (divisor `n - 1`).
    StdDev,
}

#[derive(Debug, Clone, Default)]
pub struct SurveyOptions {
    pub scale: LikertScale,
    /// Per-item overrides; items not listed default to [`Direction::Benefit`].
    pub directions: HashMap<String, Direction>,
}

/// Parses survey responses from CSV with a header naming its columns.
///
/// The header must contain `item`, `rating` and `group_column`; other columns
/// are ignored.
pub fn parse_survey_csv(text: &str, group_column: &str) -> Result<Vec<SurveyResponse>> {
    let mut lines = lines(text);
    let (_, header) = lines
        .next()
        .filter(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::MalformedHeader("missing header line".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    let find = |name: &str| {
        columns
            .iter()
            .position(|c| *c == name)
            .ok_or_else(|| Error::MalformedHeader(format!("missing column \"{name}\"")))
    };
    let (g, i, r) = (find(group_column)?, find("item")?, find("rating")?);

    let mut responses = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(Error::RaggedRow {
                line: line_no,
                expected: columns.len(),
                found: fields.len(),
            });
        }
        if fields[g].is_empty() || fields[i].is_empty() {
            return Err(Error::EmptyLabel);
        }
        check_field_label(fields[g], |_| Error::MalformedRow(line_no))?;
        check_field_label(fields[i], |_| Error::MalformedRow(line_no))?;
        responses.push(SurveyResponse::new(fields[g], fields[i], parse_decimal(fields[r])?));
    }
    Ok(responses)
}

/// Aggregates responses into one alternative per group and one criterion per
/// item, using the default 1–5 scale and benefit directions.
pub fn aggregate_survey(responses: &[SurveyResponse], statistic: Statistic) -> Result<DecisionMatrix> {
    aggregate_survey_with(responses, statistic, &SurveyOptions::default())
}

/// Groups and items are ordered lexicographically, so the result does not
/// depend on the order of `responses`.
pub fn aggregate_survey_with(
    responses: &[SurveyResponse],
    statistic: Statistic,
    options: &SurveyOptions,
) -> Result<DecisionMatrix> {
    if responses.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut cells: BTreeMap<(&str, &str), Vec<f64>> = BTreeMap::new();
    let mut items = BTreeSet::new();
    for r in responses {
        if r.group.is_empty() || r.item.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if !r.rating.is_finite() || !options.scale.contains(r.rating) {
            return Err(Error::RatingOutOfRange {
                rating: r.rating,
                min: options.scale.min,
                max: options.scale.max,
            });
        }
        items.insert(r.item.as_str());
        cells
            .entry((r.group.as_str(), r.item.as_str()))
            .or_default()
            .push(r.rating);
    }
    let groups: BTreeSet<&str> = cells.keys().map(|(g, _)| *g).collect();

    let mut values = Vec::with_capacity(groups.len());
    for &group in &groups {
        let mut row = Vec::with_capacity(items.len());
        for &item in &items {
            let ratings = cells
                .get_mut(&(group, item))
                .ok_or_else(|| Error::MissingCell {
                    group: group.into(),
                    item: item.into(),
                })?;
            // fixed summation order keeps the result order-independent
            ratings.sort_by(f64::total_cmp);
            let value = match statistic {
                Statistic::Mean => ratings.iter().sum::<f64>() / ratings.len() as f64,
                Statistic::StdDev if ratings.len() < 2 => {
                    return Err(Error::InsufficientData {
                        group: group.into(),
                        item: item.into(),
                    })
                }
                Statistic::StdDev => sample_std_dev(ratings),
            };
            row.push(value);
        }
        values.push(row);
    }
    let criteria = items
        .iter()
        .map(|&item| {
            let direction = options
                .directions
                .get(item)
                .copied()
                .unwrap_or(Direction::Benefit);
            Criterion::new(item, direction)
        })
        .collect();
    DecisionMatrix::new(groups.into_iter().map(String::from).collect(), criteria, values)
}
