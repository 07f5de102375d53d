//! The `mci` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use mci_core::{
    enumerate_chunked, enumerate_naive, generate_instance, solve_flow_baseline, solve_mci, Hypergraph, MciRun,
    Registry, Scenario, Strategy,
};

use crate::bench::{enumeration_scatter, parse_scenarios, run_benchmark, summarize, write_csv};
use crate::export::{export_model, ExportKind};
use crate::format::{parse_instance, write_instance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INSTANCE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mci", version, about = "Minimum Connectivity Inference solvers and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate random instances into a directory.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: usize,
        #[arg(long = "type")]
        hyperedge_type: u8,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance by constraint generation.
    Solve {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=6))]
        strategy: u8,
        #[arg(long, default_value_t = 900.0, value_parser = parse_seconds)]
        time_limit: f64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Solve one instance with the flow formulation.
    Flow {
        #[arg(long, default_value_t = 900.0, value_parser = parse_seconds)]
        time_limit: f64,
        #[arg(long)]
        input: PathBuf,
    },
    /// List every optimal solution of one instance.
    Enum {
        #[arg(long, value_enum, default_value_t = Method::Chunked)]
        method: Method,
        #[arg(long, default_value_t = 900.0, value_parser = parse_seconds)]
        time_limit: f64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Run algorithms over generated scenarios and write CSV results.
    Bench {
        /// File with one `n d type count seed` line per scenario.
        #[arg(long)]
        scenarios: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, default_value = "cga-s4,flow", value_delimiter = ',')]
        algos: Vec<String>,
        #[arg(long, default_value_t = 900.0, value_parser = parse_seconds)]
        time_limit: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: PathBuf,
        /// Per-scenario summary; defaults to `<out>.summary.csv`.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Enumeration (solution count, time) points; defaults to
        /// `<out>.scatter.csv`, written only for enumeration algorithms.
        #[arg(long)]
        scatter: Option<PathBuf>,
    },
    /// Write a model in LP format.
    Export {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=6))]
        strategy: u8,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Chunked,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    CutInitial,
    Flow,
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a non-negative number of seconds")),
    }
}

enum Failure {
    Usage(String),
    Instance(String),
    Timeout,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Instance(_) => EXIT_INSTANCE,
            Failure::Timeout => EXIT_TIMEOUT,
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Instance(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::Timeout => {
                    let _ = writeln!(err, "time limit reached");
                }
            }
            f.code()
        }
    }
}

fn read_instance(path: &Path) -> Result<Hypergraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Instance(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::Instance(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Instance(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Instance(format!("writing output: {e}")))
}

fn report_run(out: &mut dyn Write, run: &MciRun) -> Result<(), Failure> {
    let mut text = String::new();
    match (&run.graph, run.solved) {
        (Some(g), true) => text += &format!("cost {}\nedges {g}\n", g.edge_count()),
        (Some(g), false) => text += &format!("incumbent {}\nedges {g}\n", g.edge_count()),
        (None, _) => text += "no solution\n",
    }
    text += &format!(
        "iterations {}\nconstraints {}\ntime {:.3}\n",
        run.stats.iterations,
        run.stats.final_constraint_count,
        run.stats.wall_time.as_secs_f64()
    );
    emit(out, &text)?;
    if run.solved {
        Ok(())
    } else {
        Err(Failure::Timeout)
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.csv"))
}

fn csv_file<T: serde::Serialize>(path: &Path, rows: &[T]) -> Result<(), Failure> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).map_err(|e| Failure::Instance(format!("{}: {e}", path.display())))?;
    write_file(path, &buf)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gen { n, density, hyperedge_type, count, seed, out: dir } => {
            let sc = Scenario::new(n, density, hyperedge_type, count, seed).map_err(|e| Failure::Usage(e.to_string()))?;
            fs::create_dir_all(&dir).map_err(|e| Failure::Instance(format!("{}: {e}", dir.display())))?;
            for index in 0..count {
                let h = generate_instance(&sc, index).map_err(|e| Failure::Usage(e.to_string()))?;
                let path = dir.join(sc.file_name(index));
                write_file(&path, write_instance(&h).as_bytes())?;
                emit(out, &format!("{}\n", path.display()))?;
            }
            Ok(())
        }
        Command::Solve { strategy, time_limit, input } => {
            let h = read_instance(&input)?;
            let strategy = Strategy::from_number(strategy).map_err(|e| Failure::Usage(e.to_string()))?;
            let run = solve_mci(&h, strategy, Some(Duration::from_secs_f64(time_limit)))
                .map_err(|e| Failure::Instance(e.to_string()))?;
            report_run(out, &run)
        }
        Command::Flow { time_limit, input } => {
            let h = read_instance(&input)?;
            let run = solve_flow_baseline(&h, Some(Duration::from_secs_f64(time_limit)))
                .map_err(|e| Failure::Instance(e.to_string()))?;
            report_run(out, &run)
        }
        Command::Enum { method, time_limit, input } => {
            let h = read_instance(&input)?;
            let limit = Some(Duration::from_secs_f64(time_limit));
            let set = match method {
                Method::Naive => enumerate_naive(&h, limit),
                Method::Chunked => enumerate_chunked(&h, limit),
            }
            .map_err(|e| Failure::Instance(e.to_string()))?;
            emit(out, &set.to_text())?;
            if set.complete {
                Ok(())
            } else {
                Err(Failure::Timeout)
            }
        }
        Command::Bench { scenarios, algos, time_limit, workers, out: csv_path, summary, scatter } => {
            let registry = Registry::with_defaults();
            let algorithms = algos
                .iter()
                .map(|a| registry.get(a.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("{e}; known: {}", registry.names().collect::<Vec<_>>().join(", "))))?;
            let text = fs::read_to_string(&scenarios)
                .map_err(|e| Failure::Instance(format!("{}: {e}", scenarios.display())))?;
            let scenarios = parse_scenarios(&text).map_err(|e| Failure::Instance(format!("{}: {e}", scenarios.display())))?;
            let records = run_benchmark(&scenarios, &algorithms, Duration::from_secs_f64(time_limit), workers);
            for r in records.iter().filter(|r| r.status.starts_with("error")) {
                let _ = writeln!(err, "{} #{} ({}): {}", r.algorithm, r.index, r.n, r.status);
            }
            csv_file(&csv_path, &records)?;
            let summary_rows = summarize(&records);
            csv_file(&summary.unwrap_or_else(|| sibling(&csv_path, "summary")), &summary_rows)?;
            let points = enumeration_scatter(&records);
            if !points.is_empty() || scatter.is_some() {
                csv_file(&scatter.unwrap_or_else(|| sibling(&csv_path, "scatter")), &points)?;
            }
            let solved = records.iter().filter(|r| r.solved).count();
            emit(out, &format!("{} runs, {solved} solved\n", records.len()))
        }
        Command::Export { kind, strategy, input, out: path } => {
            let h = read_instance(&input)?;
            let strategy = Strategy::from_number(strategy).map_err(|e| Failure::Usage(e.to_string()))?;
            let kind = match kind {
                Kind::CutInitial => ExportKind::CutInitial,
                Kind::Flow => ExportKind::Flow,
            };
            let lp = export_model(&h, kind, strategy).map_err(|e| Failure::Instance(e.to_string()))?;
            write_file(&path, lp.as_bytes())
        }
    }
}

