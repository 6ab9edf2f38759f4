//! `occupancy`: build, transform, verify and sample exact occupancy models.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! or contract errors. Results go to stdout, diagnostics to stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use occupancy::comb::{enumerate_compositions, Composition};
use occupancy::eom::{
    label_distribution, label_marginal, m_model, order_statistics_distribution, BuiltinWeight, OccupancyDistribution,
    WeightFunction,
};
use occupancy::json::{
    compositions_document, label_document, marginal_document, occupancy_document, order_statistics_document,
    parse_occupancy, parse_process_spec, parse_weight_document,
};
use occupancy::rational::format_rational;
use occupancy::transform::{condition_on_partial_sum, k1_drop_particle, k2_erase_cell};
use occupancy::verify::{run_suite, Suite, VerifyConfig};
use occupancy::{Error, Rational};

#[derive(Parser)]
#[command(name = "occupancy", version, about = "Exact exchangeable occupancy models and counting processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the compositions of r particles into n cells.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print a product-form model or one of its label laws.
    Model {
        #[command(flatten)]
        model: ModelArgs,
        /// Law of the label vector instead of the occupancy vector.
        #[arg(long, conflicts_with_all = ["order_stats", "marginal"])]
        labels: bool,
        /// Law of the sorted label vector.
        #[arg(long, conflicts_with = "marginal")]
        order_stats: bool,
        /// Joint law of the given 1-based label coordinates, comma separated.
        #[arg(long, value_delimiter = ',')]
        marginal: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply a transformation to a model given by flags or a document.
    Transform {
        /// k1 (drop a particle), k2 (erase the last cell) or cond:n,s.
        #[arg(long)]
        op: String,
        /// Occupancy document to transform; `-` reads stdin.
        #[arg(long, conflicts_with_all = ["weight", "n", "r"])]
        input: Option<String>,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_r: usize,
        #[arg(long, default_value_t = 3)]
        horizon: usize,
        /// Random models and weights drawn per grid point.
        #[arg(long, default_value_t = 20)]
        random_models: usize,
    },
    /// Draw jump paths from a process spec, or compositions from a model, as CSV.
    Sample {
        /// Process specification document.
        #[arg(long, conflicts_with_all = ["weight", "n", "r"])]
        spec: Option<String>,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Number of draws.
        #[arg(long, alias = "draws", default_value_t = 10)]
        paths: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// mb, be, fd, pc:s, or @file with a weight document.
    #[arg(long)]
    weight: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A failure that maps to an exit code.
enum Failure {
    Contract(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Contract(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Contract(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(cli.command, &mut out);
    // A closed pipe is not worth reporting.
    let _ = io::stdout().write_all(out.as_bytes());
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Enumerate { n, r, format } => {
            let all = enumerate_compositions(n, r)?;
            match format {
                Format::Json => out.push_str(&compositions_document(n, r, &all)),
                Format::Csv => {
                    out.push_str(&header("x", 1..=n, false));
                    for x in &all {
                        out.push_str(&csv_row(x.counts(), None));
                    }
                }
            }
        }
        Command::Model { model, labels, order_stats, marginal, format } => {
            let d = build_model(&model.weight, model.n, model.r)?;
            let (n, r) = (model.n, model.r);
            match (labels, order_stats, marginal) {
                (true, _, _) => {
                    let ld = label_distribution(&d)?;
                    emit(out, format, label_document(&ld), "y", 1..=r, ld.iter().map(|(y, p)| (y.labels().to_vec(), p.clone())));
                }
                (_, true, _) => {
                    let os = order_statistics_distribution(&d);
                    let doc = order_statistics_document(n, r, &os);
                    emit(out, format, doc, "u", 1..=r, os.iter().map(|(u, p)| (u.labels().to_vec(), p.clone())));
                }
                (_, _, Some(coords)) => {
                    let m = label_marginal(&label_distribution(&d)?, &coords)?;
                    let doc = marginal_document(r, &coords, &m);
                    let rows = m.iter().map(|(y, p)| (y.labels().to_vec(), p.clone()));
                    emit(out, format, doc, "y", coords.iter().copied(), rows);
                }
                _ => emit_occupancy(out, format, &d),
            }
        }
        Command::Transform { op, input, weight, n, r, format } => {
            let d = match input {
                Some(path) => parse_occupancy(&read_source(&path)?)?,
                None => build_model(&required(weight, "--weight")?, required(n, "--n")?, required(r, "--r")?)?,
            };
            let result = apply_op(&op, &d)?;
            emit_occupancy(out, format, &result);
        }
        Command::Verify { suite, seed, max_n, max_r, horizon, random_models } => {
            let suite: Suite = suite.parse()?;
            let config = VerifyConfig { seed, max_n, max_r, horizon, random_models };
            let report = run_suite(suite, &config)?;
            out.push_str(&report.to_json());
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Sample { spec, weight, n, r, paths, seed } => match spec {
            Some(path) => {
                let process = parse_process_spec(&read_source(&path)?)?.build()?;
                out.push_str(&header("j", 0..=process.horizon(), false));
                for path in process.path_sampler(seed)?.take(paths) {
                    out.push_str(&csv_row(path.counts(), None));
                }
            }
            None => {
                let (n, r) = (required(n, "--n")?, required(r, "--r")?);
                let d = build_model(&required(weight, "--weight")?, n, r)?;
                out.push_str(&header("x", 1..=n, false));
                for x in d.sampler(seed)?.take(paths) {
                    out.push_str(&csv_row(x.counts(), None));
                }
            }
        },
    }
    Ok(())
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Contract(format!("{flag} is required without an input document")))
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Contract(format!("{path}: {e}")))
}

fn parse_weight(spec: &str, x_max: usize) -> Result<WeightFunction, Failure> {
    match spec.strip_prefix('@') {
        Some(path) => Ok(parse_weight_document(&read_source(path)?, x_max)?),
        None => Ok(WeightFunction::builtin(spec.parse::<BuiltinWeight>()?, x_max)),
    }
}

fn build_model(weight: &str, n: usize, r: usize) -> Result<OccupancyDistribution, Failure> {
    Ok(m_model(&parse_weight(weight, r)?, n, r)?)
}

fn apply_op(op: &str, d: &OccupancyDistribution) -> Result<OccupancyDistribution, Failure> {
    match op {
        "k1" => Ok(k1_drop_particle(d)?),
        "k2" => Ok(k2_erase_cell(d)?),
        _ => {
            let bad = || Failure::Contract(format!("unknown operation {op:?}; expected k1, k2 or cond:n,s"));
            let args = op.strip_prefix("cond:").ok_or_else(bad)?;
            let (n, s) = args.split_once(',').ok_or_else(bad)?;
            let n = n.trim().parse().map_err(|_| bad())?;
            let s = s.trim().parse().map_err(|_| bad())?;
            Ok(condition_on_partial_sum(d, n, s)?)
        }
    }
}

fn emit_occupancy(out: &mut String, format: Format, d: &OccupancyDistribution) {
    let rows = d.iter().map(|(x, p): (&Composition, &Rational)| (x.counts().to_vec(), p.clone()));
    emit(out, format, occupancy_document(d), "x", 1..=d.cells(), rows);
}

fn emit(
    out: &mut String,
    format: Format,
    json: String,
    prefix: &str,
    columns: impl IntoIterator<Item = usize>,
    rows: impl Iterator<Item = (Vec<usize>, Rational)>,
) {
    match format {
        Format::Json => out.push_str(&json),
        Format::Csv => {
            out.push_str(&header(prefix, columns, true));
            for (coords, p) in rows {
                out.push_str(&csv_row(&coords, Some(&p)));
            }
        }
    }
}

fn header(prefix: &str, columns: impl IntoIterator<Item = usize>, with_p: bool) -> String {
    let mut names: Vec<String> = columns.into_iter().map(|i| format!("{prefix}{i}")).collect();
    if with_p {
        names.push("p".into());
    }
    names.join(",") + "\n"
}

fn csv_row(coords: &[usize], p: Option<&Rational>) -> String {
    let mut cells: Vec<String> = coords.iter().map(usize::to_string).collect();
    if let Some(p) = p {
        cells.push(format_rational(p));
    }
    cells.join(",") + "\n"
}
