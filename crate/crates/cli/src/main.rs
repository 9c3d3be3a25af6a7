//! `mcdm`: rank alternatives, derive weights, probe sensitivity, aggregate
//! surveys and replay the bundled study from the command line.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mcdm_core::ingest::{
    aggregate_survey, parse_matrix_csv, parse_pairwise_csv, parse_survey_csv, serialize_matrix_csv,
    Statistic,
};
use mcdm_core::report::{
    emit_bar_chart, export_json, render_repro_table, render_sensitivity_table, render_topsis_table,
    render_weight_table, WeightSummary,
};
use mcdm_core::repro::{builtin_fixture, run_sweep};
use mcdm_core::sensitivity::{leave_one_out, rank_stability, DEFAULT_MAX_DELTA, DEFAULT_STEP};
use mcdm_core::weighting::{ahp_weights, manual_weights, AhpOutcome};
use mcdm_core::{topsis_rank, Basis, DecisionMatrix, Error, WeightMethod, WeightVector};

#[derive(Parser, Debug)]
#[command(name = "mcdm", version, about = "Multi-criteria decision analysis with TOPSIS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the alternatives of a decision matrix.
    Rank(RankArgs),
    /// Print the criterion weights a method assigns.
    Weights(RankArgs),
    /// Sweep criterion weights and report when the top alternative changes.
    Sensitivity(SensitivityArgs),
    /// Aggregate survey responses into a decision matrix.
    Aggregate(AggregateArgs),
    /// Compare every pipeline configuration against the published ranking.
    Repro(ReproArgs),
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Decision-matrix CSV; the bundled study matrix when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// std_dev, entropy, equal, manual:W1,W2,... or ahp:PATH
    #[arg(long, default_value = "std_dev", value_parser = parse_weight_spec)]
    weights: WeightSpec,
    /// Matrix the standard deviation is taken over.
    #[arg(long, value_enum, default_value_t = BasisArg::Normalized)]
    basis: BasisArg,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct SensitivityArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
    #[arg(long = "max-delta", default_value_t = DEFAULT_MAX_DELTA)]
    max_delta: f64,
    /// Report rank reversals from removing each alternative instead.
    #[arg(long = "leave-one-out")]
    leave_one_out: bool,
    /// With --leave-one-out, rederive data-driven weights after each removal.
    #[arg(long, requires = "leave_one_out")]
    recompute: bool,
}

#[derive(Args, Debug)]
struct AggregateArgs {
    /// Survey CSV with item, rating and group columns.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = StatisticArg::Mean)]
    statistic: StatisticArg,
    /// Column naming the respondent group.
    #[arg(long = "group-by", default_value = "group")]
    group_by: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct ReproArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BasisArg {
    Raw,
    Normalized,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatisticArg {
    Mean,
    Stddev,
}

#[derive(Clone, Debug, PartialEq)]
enum WeightSpec {
    StdDev,
    Entropy,
    Equal,
    Manual(Vec<f64>),
    Ahp(PathBuf),
}

fn parse_weight_spec(s: &str) -> Result<WeightSpec, String> {
    match s {
        "std_dev" => return Ok(WeightSpec::StdDev),
        "entropy" => return Ok(WeightSpec::Entropy),
        "equal" => return Ok(WeightSpec::Equal),
        _ => {}
    }
    if let Some(list) = s.strip_prefix("manual:") {
        return list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format!("invalid manual weight \"{t}\""))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(WeightSpec::Manual);
    }
    if let Some(path) = s.strip_prefix("ahp:") {
        if !path.is_empty() {
            return Ok(WeightSpec::Ahp(PathBuf::from(path)));
        }
    }
    Err(format!(
        "unknown weight method \"{s}\" (expected std_dev, entropy, equal, manual:W1,W2,... or ahp:PATH)"
    ))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_string());
    Failure::Usage(format!(
        "format {} is not available for {command}",
        name.unwrap_or_default()
    ))
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

impl MatrixArgs {
    fn load(&self) -> Result<DecisionMatrix, Failure> {
        match &self.input {
            Some(path) => Ok(parse_matrix_csv(&read(path)?)?),
            None => Ok(builtin_fixture()),
        }
    }

    fn basis(&self) -> Basis {
        match self.basis {
            BasisArg::Raw => Basis::Raw,
            BasisArg::Normalized => Basis::VectorNormalized,
        }
    }

    fn method(&self) -> Result<WeightMethod, Failure> {
        Ok(match &self.weights {
            WeightSpec::StdDev => WeightMethod::StdDev(self.basis()),
            WeightSpec::Entropy => WeightMethod::Entropy,
            WeightSpec::Equal => WeightMethod::Equal,
            WeightSpec::Manual(values) => {
                // validate the values on their own before checking the length
                manual_weights(values)?;
                WeightMethod::Manual(values.clone())
            }
            WeightSpec::Ahp(path) => WeightMethod::Ahp(parse_pairwise_csv(&read(path)?)?),
        })
    }

    /// Loads the matrix and its weights, plus the AHP diagnostics if any.
    fn resolve(&self) -> Result<(DecisionMatrix, WeightVector, Option<AhpOutcome>), Failure> {
        let method = self.method()?;
        let matrix = self.load()?;
        let ahp = match &method {
            WeightMethod::Ahp(pairwise) => Some(ahp_weights(pairwise)?),
            _ => None,
        };
        let weights = method.compute(&matrix)?;
        Ok((matrix, weights, ahp))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Rank(args) => {
            let (matrix, weights, _) = args.matrix.resolve()?;
            let result = topsis_rank(&matrix, &weights)?;
            Ok(match args.format {
                Format::Table => render_topsis_table(&result).body,
                Format::Json => with_newline(export_json(&result)),
                Format::Svg => emit_bar_chart(&result),
            })
        }
        Command::Weights(args) => {
            let (matrix, weights, ahp) = args.matrix.resolve()?;
            match args.format {
                Format::Table => Ok(render_weight_table(matrix.criteria(), &weights, ahp.as_ref()).body),
                Format::Json => Ok(with_newline(export_json(&WeightSummary::new(
                    matrix.criteria(),
                    &weights,
                    ahp.as_ref(),
                )))),
                Format::Svg => Err(unsupported(args.format, "weights")),
            }
        }
        Command::Sensitivity(args) => {
            if args.format == Format::Svg {
                return Err(unsupported(args.format, "sensitivity"));
            }
            let method = args.matrix.method()?;
            let matrix = args.matrix.load()?;
            let weights = method.compute(&matrix)?;
            if args.leave_one_out {
                let recompute = (args.recompute && method.is_data_driven()).then_some(&method);
                let report = leave_one_out(&matrix, &weights, recompute)?;
                return Ok(match args.format {
                    Format::Json => with_newline(export_json(&report)),
                    _ => render_leave_one_out(&report),
                });
            }
            let report = rank_stability(&matrix, &weights, args.step, args.max_delta)?;
            Ok(match args.format {
                Format::Json => with_newline(export_json(&report)),
                _ => render_sensitivity_table(&report).body,
            })
        }
        Command::Aggregate(args) => {
            let statistic = match args.statistic {
                StatisticArg::Mean => Statistic::Mean,
                StatisticArg::Stddev => Statistic::StdDev,
            };
            let responses = parse_survey_csv(&read(&args.input)?, &args.group_by)?;
            let matrix = aggregate_survey(&responses, statistic)?;
            match args.format {
                Format::Table => Ok(serialize_matrix_csv(&matrix)),
                Format::Json => Ok(with_newline(export_json(&matrix))),
                Format::Svg => Err(unsupported(args.format, "aggregate")),
            }
        }
        Command::Repro(args) => {
            let report = run_sweep();
            match args.format {
                Format::Table => Ok(render_repro_table(&report).body),
                Format::Json => Ok(with_newline(export_json(&report))),
                Format::Svg => Err(unsupported(args.format, "repro")),
            }
        }
    }
}

fn render_leave_one_out(report: &mcdm_core::sensitivity::LeaveOneOutReport) -> String {
    let mut out = String::from("Removed\treversals\tpairs\n");
    for run in &report.runs {
        let detail = match &run.error {
            Some(e) => format!("unranked: {e}"),
            None => run
                .reversals
                .iter()
                .map(|r| format!("{} > {}", r.ahead, r.behind))
                .collect::<Vec<_>>()
                .join("; "),
        };
        out.push_str(&format!("{}\t{}\t{detail}\n", run.removed, run.reversals.len()));
    }
    out.push_str(&format!("weights_recomputed\t{}\n", report.weights_recomputed));
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
