use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use permlab_core::algos::{permanent, repetition_report, store_zechin_attributed, Algorithm};
use permlab_core::boson::{
    full_distribution, haar_unitary, sample_distribution, Interferometer, OutputPattern,
};
use permlab_core::cost::{
    build_count_table, build_runtime_table, count_formula, format_ms, load_profiles,
    table_by_number, verdict_with, AddsVariant, MachineProfile, TableFormat,
};
use permlab_core::io::{
    complex_to_json, int_to_json, parse_matrix, rational_to_string, AnyMatrix, MatrixFormat,
};
use permlab_core::{Error, Limits, Ring, RingTag, SquareMatrix};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "permlab",
    version,
    about = "Matrix permanents, operation counts and boson sampling"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Naive,
    Ryser,
    StoreZechin,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Naive => Algorithm::Naive,
            AlgorithmArg::Ryser => Algorithm::Ryser,
            AlgorithmArg::StoreZechin => Algorithm::StoreZechin,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum TableFormatArg {
    #[default]
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum CsvRing {
    #[default]
    Int,
    Rational,
}

#[derive(Debug, clap::Args)]
struct MatrixSource {
    /// Matrix file (JSON, or CSV when the name ends in `.csv`)
    #[arg(long)]
    matrix: PathBuf,
    /// Entry ring of CSV input
    #[arg(long, value_enum, default_value_t)]
    csv_ring: CsvRing,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Permanent of a matrix with measured operation counts
    Perm {
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, value_enum, default_value = "store-zechin")]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Closed-form operation counts for an order
    Count {
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        #[arg(long)]
        n: usize,
        /// Ryser only: use the (2^n-2)(n+1) addition estimate
        #[arg(long)]
        claimed: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Per-term Store-zechin cost breakdown for a matrix
    Attribute {
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print one of the five tables
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        number: u8,
        #[arg(long, value_enum, default_value_t)]
        format: TableFormatArg,
        /// Orders for tables 4 and 5 (default 3,4,5)
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<usize>>,
        /// Machine profiles for table 5 (JSON array)
        #[arg(long)]
        machines: Option<PathBuf>,
    },
    /// Fastest classical time per machine against MPBSM
    Verdict {
        #[arg(long)]
        photons: usize,
        #[arg(long)]
        machines: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Exact output distribution of single photons through an interferometer
    BsDist {
        #[arg(long)]
        unitary: PathBuf,
        /// Occupied input modes, 1-based, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        input: Vec<usize>,
        #[arg(long, value_enum, default_value = "store-zechin")]
        engine: AlgorithmArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Draw output patterns from the exact distribution
    BsSample {
        #[arg(long)]
        unitary: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        input: Vec<usize>,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Write a Haar-random interferometer
    Randu {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        modes: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn run(cli: Cli) -> CliResult<String> {
    let limits = Limits::from_env().map_err(|e| CliError::Usage(e.to_string()))?;
    match cli.command {
        Command::Perm {
            source,
            algorithm,
            format,
        } => perm(&source, algorithm.into(), format, &limits),
        Command::Count {
            algorithm,
            n,
            claimed,
            format,
        } => count(algorithm.into(), n, claimed, format),
        Command::Attribute { source, format } => attribute(&source, format, &limits),
        Command::Table {
            number,
            format,
            orders,
            machines,
        } => table(number, format, orders, machines.as_deref()),
        Command::Verdict {
            photons,
            machines,
            format,
        } => verdict(photons, machines.as_deref(), format),
        Command::BsDist {
            unitary,
            input,
            engine,
            format,
        } => bs_dist(&unitary, &input, engine.into(), format, &limits),
        Command::BsSample {
            unitary,
            input,
            count,
            seed,
            format,
        } => bs_sample(&unitary, &input, count, seed, format, &limits),
        Command::Randu { modes, seed, out } => randu(modes as usize, seed, &out),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(source: &MatrixSource) -> CliResult<AnyMatrix> {
    let text = read(&source.matrix)?;
    let is_csv = source
        .matrix
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let format = if is_csv {
        MatrixFormat::Csv
    } else {
        MatrixFormat::Json
    };
    let ring = match source.csv_ring {
        CsvRing::Int => RingTag::Int,
        CsvRing::Rational => RingTag::Rational,
    };
    Ok(parse_matrix(&text, format, ring)?)
}

fn load_machines(path: Option<&Path>) -> CliResult<Vec<MachineProfile>> {
    match path {
        Some(p) => Ok(load_profiles(&read(p)?)?),
        None => Ok(MachineProfile::builtin()),
    }
}

/// 1-based command-line modes to 0-based indices.
fn zero_based(modes: &[usize]) -> CliResult<Vec<usize>> {
    modes
        .iter()
        .map(|&m| {
            m.checked_sub(1)
                .ok_or_else(|| CliError::Usage("modes are numbered from 1".into()))
        })
        .collect()
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

struct Rendered {
    text: String,
    json: Value,
}

fn perm(
    source: &MatrixSource,
    algorithm: Algorithm,
    format: OutputFormat,
    limits: &Limits,
) -> CliResult<String> {
    let m = load_matrix(source)?;
    fn go<R: Ring>(
        a: &SquareMatrix<R>,
        algorithm: Algorithm,
        limits: &Limits,
        show: impl Fn(&R) -> CliResult<Rendered>,
    ) -> CliResult<(Rendered, permlab_core::OpCount)> {
        let r = permanent(a, algorithm, limits)?;
        Ok((show(&r.value)?, r.counts))
    }
    let (value, counts) = match &m {
        AnyMatrix::Int(a) => go(a, algorithm, limits, |v| {
            Ok(Rendered {
                text: v.to_string(),
                json: int_to_json(v),
            })
        })?,
        AnyMatrix::Rational(a) => go(a, algorithm, limits, |v| {
            let s = rational_to_string(v);
            Ok(Rendered {
                text: s.clone(),
                json: Value::String(s),
            })
        })?,
        AnyMatrix::Complex(a) => go(a, algorithm, limits, |v| {
            Ok(Rendered {
                text: v.to_string(),
                json: complex_to_json(v)?,
            })
        })?,
    };
    Ok(match format {
        OutputFormat::Text => format!(
            "algorithm: {algorithm}\norder: {}\nring: {}\nvalue: {}\nmultiplications: {}\nadditions: {}\n",
            m.order(),
            m.ring().as_str(),
            value.text,
            counts.multiplications,
            counts.additions
        ),
        OutputFormat::Json => json_out(&json!({
            "algorithm": algorithm,
            "order": m.order(),
            "ring": m.ring().as_str(),
            "value": value.json,
            "counts": counts,
        })),
    })
}

fn count(algorithm: Algorithm, n: usize, claimed: bool, format: OutputFormat) -> CliResult<String> {
    if claimed && algorithm != Algorithm::Ryser {
        return Err(CliError::Usage(
            "--claimed only applies to --algorithm ryser".into(),
        ));
    }
    let variant = if claimed {
        AddsVariant::Claimed
    } else {
        AddsVariant::Exact
    };
    let f = count_formula(algorithm, n, variant)?;
    Ok(match format {
        OutputFormat::Text => format!(
            "algorithm: {algorithm}\nn: {n}\nmultiplications: {}\nadditions: {}\nprovenance: {}\n",
            f.counts.multiplications, f.counts.additions, f.provenance
        ),
        OutputFormat::Json => json_out(&json!({
            "algorithm": algorithm,
            "n": n,
            "variant": variant,
            "counts": f.counts,
            "provenance": f.provenance,
        })),
    })
}

fn attribute(source: &MatrixSource, format: OutputFormat, limits: &Limits) -> CliResult<String> {
    let m = load_matrix(source)?;
    let report = match &m {
        AnyMatrix::Int(a) => store_zechin_attributed(a, limits)?.1,
        AnyMatrix::Rational(a) => store_zechin_attributed(a, limits)?.1,
        AnyMatrix::Complex(a) => store_zechin_attributed(a, limits)?.1,
    };
    let repetition = repetition_report(m.order()).ok();
    Ok(match format {
        OutputFormat::Text => {
            let mut out = format!(
                "order: {}\nterm  multiplications  additions\n",
                report.order
            );
            for (j, c) in report.per_term.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:<4}  {:>15}  {:>9}",
                    j + 1,
                    c.multiplications,
                    c.additions
                );
            }
            let _ = writeln!(
                out,
                "{:<4}  {:>15}  {:>9}",
                "sum", 0, report.final_combination_adds
            );
            let _ = writeln!(
                out,
                "{:<4}  {:>15}  {:>9}",
                "total", report.totals.multiplications, report.totals.additions
            );
            if let Some(rep) = &repetition {
                for (layer, l) in &rep.per_layer {
                    let _ = writeln!(
                        out,
                        "layer {layer}: {} distinct order-{} sub-permanents, each {}-fold",
                        l.distinct_subterms, l.order, l.fold
                    );
                }
            }
            out
        }
        OutputFormat::Json => json_out(&json!({ "attribution": report, "repetition": repetition })),
    })
}

fn table(
    number: u8,
    format: TableFormatArg,
    orders: Option<Vec<usize>>,
    machines: Option<&Path>,
) -> CliResult<String> {
    if (orders.is_some() && number < 4) || (machines.is_some() && number != 5) {
        return Err(CliError::Usage(
            "--orders applies to tables 4 and 5, --machines to table 5".into(),
        ));
    }
    let t = match (number, orders) {
        (4, Some(orders)) => build_count_table(&orders)?,
        (5, orders) if orders.is_some() || machines.is_some() => {
            let orders = orders.unwrap_or_else(|| vec![3, 4, 5]);
            build_runtime_table(&orders, &load_machines(machines)?)?
        }
        (n, _) => table_by_number(n)?,
    };
    let format = match format {
        TableFormatArg::Md => TableFormat::Markdown,
        TableFormatArg::Csv => TableFormat::Csv,
        TableFormatArg::Json => TableFormat::Json,
    };
    Ok(t.render(format))
}

fn verdict(photons: usize, machines: Option<&Path>, format: OutputFormat) -> CliResult<String> {
    let rows = verdict_with(photons, &load_machines(machines)?)?;
    Ok(match format {
        OutputFormat::Text => {
            let mut out = format!(
                "{:<8} {:<10} {:<13} {:>12} {:>9} {}\n",
                "photons", "machine", "algorithm", "classical_ms", "mpbsm_ms", "classical_wins"
            );
            for v in &rows {
                let _ = writeln!(
                    out,
                    "{:<8} {:<10} {:<13} {:>12} {:>9} {}",
                    v.photons,
                    v.machine,
                    v.algorithm,
                    format_ms(v.classical_ms),
                    format_ms(v.mpbsm_ms),
                    v.classical_wins
                );
            }
            out
        }
        OutputFormat::Json => json_out(&Value::Array(
            rows.iter()
                .map(|v| {
                    let mut obj = serde_json::to_value(v).expect("serializable");
                    obj["classical_display"] = Value::from(format_ms(v.classical_ms));
                    obj["mpbsm_display"] = Value::from(format_ms(v.mpbsm_ms));
                    obj
                })
                .collect(),
        )),
    })
}

fn load_interferometer(path: &Path) -> CliResult<Interferometer> {
    Ok(Interferometer::from_json(&read(path)?)?)
}

fn pattern_text(p: &OutputPattern) -> String {
    serde_json::to_string(p).expect("serializable")
}

fn bs_dist(
    unitary: &Path,
    input: &[usize],
    engine: Algorithm,
    format: OutputFormat,
    limits: &Limits,
) -> CliResult<String> {
    let itf = load_interferometer(unitary)?;
    let input = zero_based(input)?;
    let dist = permlab_core::boson::full_distribution_with(&itf, &input, engine, limits)?;
    Ok(match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for (p, prob) in &dist.entries {
                let _ = writeln!(out, "{} {prob:e}", pattern_text(p));
            }
            out
        }
        OutputFormat::Json => json_out(&json!({
            "modes": itf.modes(),
            "input": input.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "outcomes": dist.entries.iter().map(|(p, prob)| json!({"pattern": p, "probability": prob})).collect::<Vec<_>>(),
        })),
    })
}

fn bs_sample(
    unitary: &Path,
    input: &[usize],
    count: usize,
    seed: u64,
    format: OutputFormat,
    limits: &Limits,
) -> CliResult<String> {
    let itf = load_interferometer(unitary)?;
    let input = zero_based(input)?;
    let dist = full_distribution(&itf, &input, limits)?;
    let draws = sample_distribution(&dist, count, seed);
    Ok(match format {
        OutputFormat::Text => draws.iter().map(|p| pattern_text(p) + "\n").collect(),
        OutputFormat::Json => json_out(&json!({ "seed": seed, "draws": draws })),
    })
}

fn randu(modes: usize, seed: u64, out: &Path) -> CliResult<String> {
    let itf = haar_unitary(modes, seed);
    std::fs::write(out, itf.to_json())
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", out.display())))?;
    Ok(format!(
        "wrote {modes}-mode Haar unitary (seed {seed}) to {}\n",
        out.display()
    ))
}
