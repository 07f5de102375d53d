//! Constraint generation for MCI.
//!
//! The relaxed model has one binary per support-graph edge, a spanning row
//! `sum_{u,v in S} x_uv >= |S| - 1` per hyperedge and one row per pooled cut.
//! Each round solves it, finds the hyperedges whose induced subgraph is
//! disconnected, adds cuts for them and solves again. Every added cut is
//! violated by the current solution, so the pool strictly grows and the loop
//! ends at the latest once all bipartition cuts are present.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use mci_ilp::{Constraint, Group, LinearModel, SolveOptions, SolveStatus, VarId};

use crate::cuts::{all_bipartition_cuts, singleton_cuts, Cut, CutPool, Routine};
use crate::error::MciError;
use crate::hypergraph::{Edge, Hypergraph, SolutionGraph};

/// Upper limit on the number of cuts [`full_bipartition_oracle`] will build.
pub const FULL_BIPARTITION_LIMIT: u128 = 100_000;

pub const SPANNING_GROUP: &str = "spanning";
pub const CUT_GROUP: &str = "cuts";

/// Maps support-graph edges to model variables named `x_<u>_<v>`.
#[derive(Debug, Clone)]
pub struct EdgeVars {
    n: usize,
    edges: Vec<Edge>,
    ids: Vec<VarId>,
    index: HashMap<Edge, VarId>,
}

impl EdgeVars {
    pub fn declare(model: &mut LinearModel, h: &Hypergraph) -> Result<Self, MciError> {
        let edges = h.support_graph().edges().to_vec();
        let mut ids = Vec::with_capacity(edges.len());
        let mut index = HashMap::with_capacity(edges.len());
        for &e in &edges {
            let id = model.add_binary(var_name(e), 1)?;
            ids.push(id);
            index.insert(e, id);
        }
        Ok(EdgeVars { n: h.n(), edges, ids, index })
    }

    pub fn var(&self, e: Edge) -> Option<VarId> {
        self.index.get(&e).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Graph of the edges set to one in `assignment`.
    pub fn graph(&self, assignment: &[i64]) -> SolutionGraph {
        let chosen = self.edges.iter().zip(&self.ids).filter(|(_, id)| assignment[id.index()] == 1).map(|(&e, _)| e);
        SolutionGraph::from_edges(self.n, chosen)
    }

    /// Row `sum over edges of coef * x_e` for edges of the support graph.
    pub fn row(&self, edges: impl IntoIterator<Item = Edge>, coef: i64) -> Vec<(VarId, i64)> {
        edges.into_iter().filter_map(|e| self.var(e).map(|v| (v, coef))).collect()
    }
}

pub fn var_name(e: Edge) -> String {
    format!("x_{}_{}", e.u(), e.v())
}

fn spanning_row(vars: &EdgeVars, h: &Hypergraph, i: usize) -> Constraint {
    let s = h.hyperedge(i);
    let mut pairs = Vec::new();
    for (k, &a) in s.iter().enumerate() {
        for &b in &s[k + 1..] {
            pairs.push(Edge::new(a, b));
        }
    }
    Constraint::new(vars.row(pairs, 1), mci_ilp::Sense::Ge, s.len() as i64 - 1).named(format!("span_S{i}"))
}

fn cut_row(vars: &EdgeVars, cut: &Cut, k: usize) -> Constraint {
    Constraint::new(vars.row(cut.crossing_pairs(), 1), mci_ilp::Sense::Ge, cut.demand() as i64)
        .named(format!("cut_{k}"))
}

/// Model with the spanning rows of `h` and one row per cut of `cuts`
/// (deduplicated), minimizing the edge count.
pub fn build_model(h: &Hypergraph, cuts: &[Cut]) -> Result<(LinearModel, EdgeVars, CutPool), MciError> {
    let mut model = LinearModel::new();
    let vars = EdgeVars::declare(&mut model, h)?;
    let spanning: Vec<Constraint> = (0..h.m()).map(|i| spanning_row(&vars, h, i)).collect();
    model.add_constraints(spanning, &Group::new(SPANNING_GROUP))?;
    let mut pool = CutPool::new();
    let mut rows = Vec::new();
    for c in cuts {
        if pool.insert(c.clone()) {
            rows.push(cut_row(&vars, c, pool.len()));
        }
    }
    model.add_constraints(rows, &Group::new(CUT_GROUP))?;
    Ok((model, vars, pool))
}

/// Initial cuts plus separation routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strategy {
    pub singleton_init: bool,
    pub routine: Routine,
}

impl Strategy {
    /// Strategies 1-3 start from no cuts, 4-6 from singleton cuts; routines
    /// cycle 1, 2, 3 within each half.
    pub fn from_number(k: u8) -> Result<Self, MciError> {
        if !(1..=6).contains(&k) {
            return Err(MciError::UnknownStrategy(k));
        }
        Ok(Strategy { singleton_init: k >= 4, routine: Routine::from_number((k - 1) % 3 + 1)? })
    }

    pub fn number(self) -> u8 {
        self.routine.number() + if self.singleton_init { 3 } else { 0 }
    }

    pub fn all() -> impl Iterator<Item = Strategy> {
        (1..=6).map(|k| Strategy::from_number(k).expect("1..=6"))
    }

    pub fn initial_cuts(self, h: &Hypergraph) -> Vec<Cut> {
        if self.singleton_init {
            singleton_cuts(h)
        } else {
            Vec::new()
        }
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy { singleton_init: true, routine: Routine::BalancedBipartition }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strategy {}", self.number())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    /// ILP solves performed by the generation loop (at least one).
    pub iterations: usize,
    /// Rows in the last model solved: spanning rows plus pooled cuts.
    pub final_constraint_count: usize,
    pub solver_calls: usize,
    pub wall_time: Duration,
    pub timed_out: bool,
    /// Objective of every relaxed solve, in order.
    pub objective_trace: Vec<i64>,
    pub nodes: u64,
}

/// Result of one generation loop on the current model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CgaOutcome {
    Feasible(SolutionGraph),
    Infeasible,
    /// Deadline hit; carries the last relaxed solution, which may violate
    /// some hyperedges.
    TimedOut(Option<SolutionGraph>),
}

/// Owns a relaxed model and its cut pool; the enumeration layer adds its own
/// rows to the same model between runs.
#[derive(Debug, Clone)]
pub struct CgaEngine<'h> {
    h: &'h Hypergraph,
    strategy: Strategy,
    model: LinearModel,
    vars: EdgeVars,
    pool: CutPool,
    stats: RunStats,
}

impl<'h> CgaEngine<'h> {
    pub fn new(h: &'h Hypergraph, strategy: Strategy) -> Result<Self, MciError> {
        let (model, vars, pool) = build_model(h, &strategy.initial_cuts(h))?;
        Ok(CgaEngine { h, strategy, model, vars, pool, stats: RunStats::default() })
    }

    pub fn hypergraph(&self) -> &'h Hypergraph {
        self.h
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn model(&self) -> &LinearModel {
        &self.model
    }

    pub fn model_mut(&mut self) -> &mut LinearModel {
        &mut self.model
    }

    pub fn vars(&self) -> &EdgeVars {
        &self.vars
    }

    pub fn pool(&self) -> &CutPool {
        &self.pool
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    /// Runs the generation loop until the relaxed optimum is feasible for
    /// every hyperedge, the model has no solution, or `deadline` passes.
    /// `floor` is a known lower bound on the relaxed optimum.
    pub fn run(&mut self, deadline: Option<Instant>, floor: Option<i64>) -> Result<CgaOutcome, MciError> {
        let mut floor = floor;
        let mut last: Option<SolutionGraph> = None;
        let mut solves = 0usize;
        loop {
            let opts = SolveOptions::default().deadline(deadline).objective_floor(floor);
            let out = self.model.solve(&opts)?;
            self.stats.solver_calls += 1;
            self.stats.nodes += out.nodes;
            solves += 1;
            self.stats.iterations = solves;
            self.stats.final_constraint_count = self.model.constraint_count();
            match out.status {
                SolveStatus::TimedOut => {
                    self.stats.timed_out = true;
                    let g = out.assignment.as_deref().map(|a| self.vars.graph(a)).or(last);
                    return Ok(CgaOutcome::TimedOut(g));
                }
                SolveStatus::Infeasible => return Ok(CgaOutcome::Infeasible),
                SolveStatus::Optimal => {}
            }
            let assignment = out.assignment.expect("optimal outcome carries an assignment");
            let objective = out.objective.expect("optimal outcome carries an objective");
            self.stats.objective_trace.push(objective);
            floor = Some(objective);
            let g = self.vars.graph(&assignment);
            let violated = self.h.violated_hyperedges(&g);
            if violated.is_empty() {
                return Ok(CgaOutcome::Feasible(g));
            }
            let added = self.separate(&g, &violated)?;
            if added == 0 {
                return Err(MciError::UnexpectedInfeasibility);
            }
            last = Some(g);
        }
    }

    fn separate(&mut self, g: &SolutionGraph, violated: &[usize]) -> Result<usize, MciError> {
        let mut rows = Vec::new();
        for &i in violated {
            let comps = g.induced_components(self.h.hyperedge(i));
            for cut in self.strategy.routine.cuts(i, &comps)? {
                if self.pool.insert(cut.clone()) {
                    rows.push(cut_row(&self.vars, &cut, self.pool.len()));
                }
            }
        }
        let added = rows.len();
        self.model.add_constraints(rows, &Group::new(CUT_GROUP))?;
        Ok(added)
    }
}

/// Outcome of a single-instance MCI solve.
#[derive(Debug, Clone, PartialEq)]
pub struct MciRun {
    /// Optimal graph when `solved`; otherwise the last relaxed solution, if any.
    pub graph: Option<SolutionGraph>,
    pub solved: bool,
    pub stats: RunStats,
}

impl MciRun {
    pub fn cost(&self) -> Option<usize> {
        if self.solved {
            self.graph.as_ref().map(SolutionGraph::edge_count)
        } else {
            None
        }
    }
}

/// Minimum-edge feasible graph for `h` by constraint generation.
pub fn solve_mci(h: &Hypergraph, strategy: Strategy, time_limit: Option<Duration>) -> Result<MciRun, MciError> {
    let start = Instant::now();
    let deadline = time_limit.and_then(|t| start.checked_add(t));
    let mut engine = CgaEngine::new(h, strategy)?;
    let outcome = engine.run(deadline, None)?;
    let mut stats = engine.stats.clone();
    stats.wall_time = start.elapsed();
    match outcome {
        CgaOutcome::Feasible(g) => Ok(MciRun { graph: Some(g), solved: true, stats }),
        CgaOutcome::TimedOut(g) => Ok(MciRun { graph: g, solved: false, stats }),
        CgaOutcome::Infeasible => Err(MciError::UnexpectedInfeasibility),
    }
}

/// Solves the model with every bipartition cut at once, no generation loop.
pub fn full_bipartition_oracle(h: &Hypergraph) -> Result<SolutionGraph, MciError> {
    let cuts = all_bipartition_cuts(h, FULL_BIPARTITION_LIMIT)?;
    let (mut model, vars, _) = build_model(h, &cuts)?;
    let out = model.solve(&SolveOptions::default())?;
    match out.assignment {
        Some(a) if out.status == SolveStatus::Optimal => Ok(vars.graph(&a)),
        _ => Err(MciError::UnexpectedInfeasibility),
    }
}
