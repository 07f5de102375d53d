//! Enumeration of all optimal MCI solutions.
//!
//! Both methods first solve for the optimal cost `c*`, then pin the model to
//! `sum x_e = c*` and keep calling the constraint-generation loop. The naive
//! method forbids each solution as soon as it is found. The chunked method
//! walks a chain from each new solution, forcing one of its edges to zero at
//! a time and collecting what the solver returns, and only then forbids the
//! whole batch.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::time::{Duration, Instant};

use mci_ilp::{Constraint, Group, Sense};

use crate::cga::{CgaEngine, CgaOutcome, Strategy};
use crate::error::MciError;
use crate::hypergraph::{Edge, Hypergraph, SolutionGraph};

pub const COST_GROUP: &str = "cost";
pub const FORBID_GROUP: &str = "forbid";
pub const NEIGHBORHOOD_GROUP: &str = "neighborhood";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EnumStats {
    /// Neighborhoods explored (chunked) or solutions forbidden one by one (naive).
    pub batches: usize,
    pub solver_calls: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    /// `c*`; `None` if the first solve did not finish.
    pub optimal_cost: Option<usize>,
    pub solutions: BTreeSet<SolutionGraph>,
    /// False when the time limit cut the enumeration short.
    pub complete: bool,
    pub stats: EnumStats,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// `c* <cost> count <k>` followed by one sorted edge list per line, in
    /// canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let cost = self.optimal_cost.map_or_else(|| "-".to_string(), |c| c.to_string());
        let _ = writeln!(out, "c* {cost} count {}", self.solutions.len());
        for s in &self.solutions {
            let _ = writeln!(out, "{s}");
        }
        out
    }
}

/// Shared state of an enumeration run: the relaxed model (with its cut pool),
/// `c*` and the solutions collected so far.
pub struct EnumerationContext<'h> {
    engine: CgaEngine<'h>,
    optimal_cost: usize,
    deadline: Option<Instant>,
    found: BTreeSet<SolutionGraph>,
    timed_out: bool,
}

/// First optimal solution and a context pinned to its cost.
pub enum Start<'h> {
    Ready(EnumerationContext<'h>, SolutionGraph),
    TimedOut,
}

impl<'h> EnumerationContext<'h> {
    pub fn start(h: &'h Hypergraph, deadline: Option<Instant>) -> Result<Start<'h>, MciError> {
        let mut engine = CgaEngine::new(h, Strategy::default())?;
        let first = match engine.run(deadline, None)? {
            CgaOutcome::Feasible(g) => g,
            CgaOutcome::TimedOut(_) => return Ok(Start::TimedOut),
            CgaOutcome::Infeasible => return Err(MciError::UnexpectedInfeasibility),
        };
        let optimal_cost = first.edge_count();
        let all: Vec<Edge> = engine.vars().edges().to_vec();
        let row = Constraint::new(engine.vars().row(all, 1), Sense::Eq, optimal_cost as i64).named("cost");
        engine.model_mut().add_constraints([row], &Group::new(COST_GROUP))?;
        let ctx = EnumerationContext { engine, optimal_cost, deadline, found: BTreeSet::new(), timed_out: false };
        Ok(Start::Ready(ctx, first))
    }

    pub fn optimal_cost(&self) -> usize {
        self.optimal_cost
    }

    pub fn found(&self) -> &BTreeSet<SolutionGraph> {
        &self.found
    }

    pub fn engine(&self) -> &CgaEngine<'h> {
        &self.engine
    }

    pub fn timed_out(&self) -> bool {
        self.timed_out
    }

    /// Next optimal solution allowed by the current model, `None` when there
    /// is none left (or time ran out).
    pub fn next_solution(&mut self) -> Result<Option<SolutionGraph>, MciError> {
        match self.engine.run(self.deadline, Some(self.optimal_cost as i64))? {
            CgaOutcome::Feasible(g) => Ok(Some(g)),
            CgaOutcome::Infeasible => Ok(None),
            CgaOutcome::TimedOut(_) => {
                self.timed_out = true;
                Ok(None)
            }
        }
    }

    /// Records `solutions` as found and adds one row
    /// `sum_{e in S} x_e <= |S| - 1` per solution.
    pub fn forbid(&mut self, solutions: &[SolutionGraph]) -> Result<(), MciError> {
        let rows: Vec<Constraint> = solutions
            .iter()
            .map(|s| {
                let terms = self.engine.vars().row(s.edges().iter().copied(), 1);
                Constraint::new(terms, Sense::Le, s.edge_count() as i64 - 1)
            })
            .collect();
        self.engine.model_mut().add_constraints(rows, &Group::new(FORBID_GROUP))?;
        self.found.extend(solutions.iter().cloned());
        Ok(())
    }

    /// Chain from `start`: force the smallest not-yet-forced edge of the
    /// current solution to zero, re-solve at cost `c*`, continue from the new
    /// solution, stop when none exists. The forcing rows are retracted
    /// afterwards. The result begins with `start`.
    pub fn explore_neighborhood(&mut self, start: SolutionGraph) -> Result<Vec<SolutionGraph>, MciError> {
        let scope = Group::new(NEIGHBORHOOD_GROUP);
        let mut forced: BTreeSet<Edge> = BTreeSet::new();
        let mut chain = vec![start.clone()];
        let mut current = start;
        let result = loop {
            let Some(&e) = current.edges().iter().find(|e| !forced.contains(e)) else {
                break Ok(());
            };
            forced.insert(e);
            let var = self.engine.vars().var(e).expect("solution edges are support edges");
            if let Err(err) = self.engine.model_mut().add_constraints([Constraint::new(vec![(var, 1)], Sense::Eq, 0)], &scope)
            {
                break Err(err.into());
            }
            match self.next_solution() {
                Ok(Some(next)) => {
                    if !self.found.contains(&next) && !chain.contains(&next) {
                        chain.push(next.clone());
                    }
                    current = next;
                }
                Ok(None) => break Ok(()),
                Err(err) => break Err(err),
            }
        };
        self.engine.model_mut().retract_group(&scope);
        result.map(|()| chain)
    }

    fn finish(self, start: Instant, batches: usize) -> SolutionSet {
        let stats = EnumStats { batches, solver_calls: self.engine.stats().solver_calls, wall_time: start.elapsed() };
        SolutionSet {
            optimal_cost: Some(self.optimal_cost),
            solutions: self.found,
            complete: !self.timed_out,
            stats,
        }
    }
}

fn incomplete(start: Instant) -> SolutionSet {
    SolutionSet {
        optimal_cost: None,
        solutions: BTreeSet::new(),
        complete: false,
        stats: EnumStats { wall_time: start.elapsed(), ..EnumStats::default() },
    }
}

/// Forbids every solution individually until the model runs dry.
pub fn enumerate_naive(h: &Hypergraph, time_limit: Option<Duration>) -> Result<SolutionSet, MciError> {
    let start = Instant::now();
    let deadline = time_limit.and_then(|t| start.checked_add(t));
    let (mut ctx, first) = match EnumerationContext::start(h, deadline)? {
        Start::Ready(ctx, first) => (ctx, first),
        Start::TimedOut => return Ok(incomplete(start)),
    };
    let mut batches = 1;
    ctx.forbid(&[first])?;
    while let Some(s) = ctx.next_solution()? {
        ctx.forbid(&[s])?;
        batches += 1;
    }
    Ok(ctx.finish(start, batches))
}

/// Collects solutions neighborhood by neighborhood, forbidding each batch at
/// once.
pub fn enumerate_chunked(h: &Hypergraph, time_limit: Option<Duration>) -> Result<SolutionSet, MciError> {
    let start = Instant::now();
    let deadline = time_limit.and_then(|t| start.checked_add(t));
    let (mut ctx, first) = match EnumerationContext::start(h, deadline)? {
        Start::Ready(ctx, first) => (ctx, first),
        Start::TimedOut => return Ok(incomplete(start)),
    };
    let mut batches = 0;
    let mut next = Some(first);
    while let Some(s) = next {
        let batch = ctx.explore_neighborhood(s)?;
        ctx.forbid(&batch)?;
        batches += 1;
        if ctx.timed_out() {
            break;
        }
        next = ctx.next_solution()?;
    }
    Ok(ctx.finish(start, batches))
}
