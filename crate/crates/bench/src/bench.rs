//! Benchmark runs: one record per (instance, algorithm), per-scenario
//! summaries and the (solution count, time) points of enumeration runs.

use std::io;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc};
use std::time::Duration;

use mci_core::{generate_instance, Algorithm, Hypergraph, Scenario};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(900);

fn three_decimals<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.3}"))
}

fn three_decimals_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => three_decimals(x, s),
        None => s.serialize_none(),
    }
}

/// One CSV row. Columns follow the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub density: usize,
    #[serde(rename = "type")]
    pub hyperedge_type: u8,
    pub count: usize,
    pub seed: u64,
    pub index: usize,
    pub algorithm: String,
    pub solved: bool,
    /// Seconds spent in the solve call.
    #[serde(serialize_with = "three_decimals")]
    pub wall_time: f64,
    pub cost: Option<usize>,
    pub constraints: usize,
    pub iterations: usize,
    pub solution_count: Option<usize>,
    /// `ok`, `timeout` or `error: <reason>`.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub density: usize,
    #[serde(rename = "type")]
    pub hyperedge_type: u8,
    pub count: usize,
    pub seed: u64,
    pub algorithm: String,
    pub instances: usize,
    pub solved: usize,
    /// Over solved instances only.
    #[serde(serialize_with = "three_decimals_opt")]
    pub mean_time: Option<f64>,
    #[serde(serialize_with = "three_decimals_opt")]
    pub mean_constraints: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub n: usize,
    pub density: usize,
    #[serde(rename = "type")]
    pub hyperedge_type: u8,
    pub seed: u64,
    pub index: usize,
    pub algorithm: String,
    pub solution_count: usize,
    #[serde(serialize_with = "three_decimals")]
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScenarioFileError {
    pub line: usize,
    pub message: String,
}

/// One scenario per line: `n d type count seed`. Blank lines and `#`
/// comments are skipped.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>, ScenarioFileError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |message: String| ScenarioFileError { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [n, d, t, count, seed] = fields[..] else {
            return Err(fail(format!("expected `n d type count seed`, got {} fields", fields.len())));
        };
        let num = |s: &str| s.parse::<u64>().map_err(|_| fail(format!("`{s}` is not a non-negative integer")));
        let t = u8::try_from(num(t)?).map_err(|_| fail(format!("unknown hyperedge type {t}")))?;
        let scenario = Scenario::new(num(n)? as usize, num(d)? as usize, t, num(count)? as usize, num(seed)?)
            .map_err(|e| fail(e.to_string()))?;
        out.push(scenario);
    }
    Ok(out)
}

pub fn run_job(
    scenario: &Scenario,
    index: usize,
    h: &Hypergraph,
    algorithm: &dyn Algorithm,
    time_limit: Duration,
) -> BenchRecord {
    let mut record = blank_record(scenario, index, algorithm);
    match algorithm.run(h, Some(time_limit)) {
        Ok(report) => {
            record.wall_time = report.wall_time.as_secs_f64();
            record.constraints = report.constraints;
            record.iterations = report.iterations;
            let verified = match (&report.graph, report.cost) {
                (Some(g), Some(c)) => h.is_feasible(g).0 && g.edge_count() == c,
                _ => false,
            };
            if !report.solved {
                record.wall_time = record.wall_time.max(time_limit.as_secs_f64());
                record.status = "timeout".into();
            } else if !verified {
                record.status = "error: reported solution is not a feasible graph of the reported cost".into();
            } else {
                record.solved = true;
                record.cost = report.cost;
                record.solution_count = report.solution_count;
                record.status = "ok".into();
            }
        }
        Err(e) => record.status = format!("error: {e}"),
    }
    record
}

/// Runs every algorithm on every generated instance. Jobs are spread over
/// `workers` threads; records come back in (scenario, index, algorithm)
/// order whatever the number of workers.
pub fn run_benchmark(
    scenarios: &[Scenario],
    algorithms: &[Arc<dyn Algorithm>],
    time_limit: Duration,
    workers: usize,
) -> Vec<BenchRecord> {
    let mut instances = Vec::new();
    for sc in scenarios {
        for index in 0..sc.count {
            instances.push((sc, index, generate_instance(sc, index)));
        }
    }
    let jobs: Vec<(usize, usize)> =
        (0..instances.len()).flat_map(|i| (0..algorithms.len()).map(move |a| (i, a))).collect();
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let mut records: Vec<Option<BenchRecord>> = vec![None; jobs.len()];
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1) {
            let tx = tx.clone();
            let (jobs, instances, next) = (&jobs, &instances, &next);
            scope.spawn(move || loop {
                let id = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, a)) = jobs.get(id) else { break };
                let (sc, index, h) = &instances[i];
                let algorithm = algorithms[a].as_ref();
                let record = match h {
                    Ok(h) => run_job(sc, *index, h, algorithm, time_limit),
                    Err(e) => {
                        let mut r = blank_record(sc, *index, algorithm);
                        r.status = format!("error: {e}");
                        r
                    }
                };
                if tx.send((id, record)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for (id, record) in rx {
            records[id] = Some(record);
        }
    });
    records.into_iter().map(|r| r.expect("every job reports")).collect()
}

fn blank_record(scenario: &Scenario, index: usize, algorithm: &dyn Algorithm) -> BenchRecord {
    BenchRecord {
        n: scenario.n,
        density: scenario.density,
        hyperedge_type: scenario.hyperedge_type,
        count: scenario.count,
        seed: scenario.seed,
        index,
        algorithm: algorithm.name().to_string(),
        solved: false,
        wall_time: 0.0,
        cost: None,
        constraints: 0,
        iterations: 0,
        solution_count: None,
        status: String::new(),
    }
}

/// One row per (scenario, algorithm), in order of first appearance.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut rows: Vec<(SummaryRow, f64, f64)> = Vec::new();
    for r in records {
        let key = |s: &SummaryRow| {
            (s.n, s.density, s.hyperedge_type, s.count, s.seed, s.algorithm.as_str())
                == (r.n, r.density, r.hyperedge_type, r.count, r.seed, r.algorithm.as_str())
        };
        let pos = match rows.iter().position(|(s, _, _)| key(s)) {
            Some(p) => p,
            None => {
                rows.push((
                    SummaryRow {
                        n: r.n,
                        density: r.density,
                        hyperedge_type: r.hyperedge_type,
                        count: r.count,
                        seed: r.seed,
                        algorithm: r.algorithm.clone(),
                        instances: 0,
                        solved: 0,
                        mean_time: None,
                        mean_constraints: None,
                    },
                    0.0,
                    0.0,
                ));
                rows.len() - 1
            }
        };
        let (row, time, cons) = &mut rows[pos];
        row.instances += 1;
        if r.solved {
            row.solved += 1;
            *time += r.wall_time;
            *cons += r.constraints as f64;
        }
    }
    rows.into_iter()
        .map(|(mut row, time, cons)| {
            if row.solved > 0 {
                row.mean_time = Some(time / row.solved as f64);
                row.mean_constraints = Some(cons / row.solved as f64);
            }
            row
        })
        .collect()
}

pub fn enumeration_scatter(records: &[BenchRecord]) -> Vec<ScatterPoint> {
    records
        .iter()
        .filter_map(|r| {
            Some(ScatterPoint {
                n: r.n,
                density: r.density,
                hyperedge_type: r.hyperedge_type,
                seed: r.seed,
                index: r.index,
                algorithm: r.algorithm.clone(),
                solution_count: r.solution_count?,
                wall_time: r.wall_time,
            })
        })
        .collect()
}

pub fn write_csv<T: Serialize>(rows: &[T], out: impl io::Write) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(input: impl io::Read) -> Result<Vec<BenchRecord>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}
