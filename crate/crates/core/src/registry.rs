//! Solvers behind one interface, looked up by name.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cga::{full_bipartition_oracle, solve_mci, MciRun, Strategy};
use crate::cuts::bipartition_cut_count;
use crate::enumeration::{enumerate_chunked, enumerate_naive, SolutionSet};
use crate::error::MciError;
use crate::flow::solve_flow_baseline;
use crate::hypergraph::{Hypergraph, SolutionGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmReport {
    pub solved: bool,
    pub cost: Option<usize>,
    /// One optimal graph, when the algorithm produced one.
    pub graph: Option<SolutionGraph>,
    pub constraints: usize,
    pub iterations: usize,
    pub solution_count: Option<usize>,
    pub wall_time: Duration,
}

impl AlgorithmReport {
    fn from_run(run: MciRun) -> Self {
        AlgorithmReport {
            solved: run.solved,
            cost: run.cost(),
            constraints: run.stats.final_constraint_count,
            iterations: run.stats.iterations,
            solution_count: None,
            wall_time: run.stats.wall_time,
            graph: run.graph,
        }
    }

    fn from_set(set: SolutionSet) -> Self {
        AlgorithmReport {
            solved: set.complete,
            cost: if set.complete { set.optimal_cost } else { None },
            graph: set.solutions.first().cloned().filter(|_| set.complete),
            constraints: 0,
            iterations: set.stats.batches,
            solution_count: set.complete.then_some(set.solutions.len()),
            wall_time: set.stats.wall_time,
        }
    }
}

pub trait Algorithm: Send + Sync {
    fn name(&self) -> &str;
    fn run(&self, h: &Hypergraph, time_limit: Option<Duration>) -> Result<AlgorithmReport, MciError>;
}

pub struct CgaAlgorithm {
    name: String,
    strategy: Strategy,
}

impl CgaAlgorithm {
    pub fn new(strategy: Strategy) -> Self {
        CgaAlgorithm { name: format!("cga-s{}", strategy.number()), strategy }
    }
}

impl Algorithm for CgaAlgorithm {
    fn name(&self) -> &str {
        &self.name
    }

    fn run(&self, h: &Hypergraph, time_limit: Option<Duration>) -> Result<AlgorithmReport, MciError> {
        solve_mci(h, self.strategy, time_limit).map(AlgorithmReport::from_run)
    }
}

pub struct FlowAlgorithm;

impl Algorithm for FlowAlgorithm {
    fn name(&self) -> &str {
        "flow"
    }

    fn run(&self, h: &Hypergraph, time_limit: Option<Duration>) -> Result<AlgorithmReport, MciError> {
        solve_flow_baseline(h, time_limit).map(AlgorithmReport::from_run)
    }
}

/// Solves the model with every bipartition cut up front. Ignores the time
/// limit.
pub struct OracleAlgorithm;

impl Algorithm for OracleAlgorithm {
    fn name(&self) -> &str {
        "oracle"
    }

    fn run(&self, h: &Hypergraph, _time_limit: Option<Duration>) -> Result<AlgorithmReport, MciError> {
        let start = Instant::now();
        let g = full_bipartition_oracle(h)?;
        let cuts: u128 = bipartition_cut_count(h);
        Ok(AlgorithmReport {
            solved: true,
            cost: Some(g.edge_count()),
            graph: Some(g),
            constraints: h.m() + cuts as usize,
            iterations: 1,
            solution_count: None,
            wall_time: start.elapsed(),
        })
    }
}

pub struct EnumAlgorithm {
    chunked: bool,
}

impl EnumAlgorithm {
    pub fn naive() -> Self {
        EnumAlgorithm { chunked: false }
    }

    pub fn chunked() -> Self {
        EnumAlgorithm { chunked: true }
    }
}

impl Algorithm for EnumAlgorithm {
    fn name(&self) -> &str {
        if self.chunked {
            "enum-chunked"
        } else {
            "enum-naive"
        }
    }

    fn run(&self, h: &Hypergraph, time_limit: Option<Duration>) -> Result<AlgorithmReport, MciError> {
        let set = if self.chunked { enumerate_chunked(h, time_limit)? } else { enumerate_naive(h, time_limit)? };
        Ok(AlgorithmReport::from_set(set))
    }
}

#[derive(Clone, Default)]
pub struct Registry {
    algorithms: BTreeMap<String, Arc<dyn Algorithm>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    /// cga-s1 .. cga-s6, flow, oracle, enum-naive, enum-chunked.
    pub fn with_defaults() -> Self {
        let mut r = Registry::empty();
        for s in Strategy::all() {
            r.register(Arc::new(CgaAlgorithm::new(s)));
        }
        r.register(Arc::new(FlowAlgorithm));
        r.register(Arc::new(OracleAlgorithm));
        r.register(Arc::new(EnumAlgorithm::naive()));
        r.register(Arc::new(EnumAlgorithm::chunked()));
        r
    }

    /// Replaces any algorithm already registered under the same name.
    pub fn register(&mut self, algorithm: Arc<dyn Algorithm>) {
        self.algorithms.insert(algorithm.name().to_string(), algorithm);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Algorithm>, MciError> {
        self.algorithms.get(name).cloned().ok_or_else(|| MciError::UnknownAlgorithm(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.algorithms.keys().map(String::as_str)
    }
}
