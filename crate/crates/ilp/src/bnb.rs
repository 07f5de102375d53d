//! Depth-first branch-and-bound over binary variables.
//!
//! Nodes are bounded by the LP relaxation (see [`crate::lp`]). The branching
//! variable is the lowest-index fractional one and the `1` child is explored
//! first. Among leaves of equal objective the first reached wins, so a model
//! always yields the same assignment.

use std::time::{Duration, Instant};

use crate::error::ModelError;
use crate::lp::{DualSimplex, LpStatus};
use crate::model::{LinearModel, VarId};

const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub deadline: Option<Instant>,
    /// A known lower bound on the optimum; the search stops as soon as an
    /// incumbent reaches it.
    pub objective_floor: Option<i64>,
}

impl SolveOptions {
    pub fn with_time_limit(limit: Duration) -> Self {
        SolveOptions { deadline: Instant::now().checked_add(limit), objective_floor: None }
    }

    pub fn deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn objective_floor(mut self, floor: Option<i64>) -> Self {
        self.objective_floor = floor;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Best assignment found: the optimum when `Optimal`, the incumbent (if
    /// any) when `TimedOut`.
    pub assignment: Option<Vec<i64>>,
    pub objective: Option<i64>,
    /// Lower bound proven by the root relaxation.
    pub bound: Option<i64>,
    pub nodes: u64,
    pub lp_pivots: u64,
}

impl SolveOutcome {
    pub fn value(&self, v: VarId) -> Option<i64> {
        self.assignment.as_ref().map(|a| a[v.index()])
    }
}

/// Read-only view of the variable bounds at a search node.
pub struct NodeBounds<'a> {
    lp: &'a DualSimplex,
}

impl NodeBounds<'_> {
    pub fn is_free(&self, v: VarId) -> bool {
        self.lp.lower(v.index()) < self.lp.upper(v.index())
    }

    /// False when the variable is fixed to zero at this node.
    pub fn may_be_one(&self, v: VarId) -> bool {
        self.lp.upper(v.index()) > 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafVerdict {
    Accept,
    /// Reject the leaf and branch on this (free) variable.
    Branch(VarId),
    /// Reject the leaf and the whole subtree.
    Prune,
}

/// Problem-specific checks that complement the linear constraints, used for
/// models whose feasibility is only partially expressed as rows.
pub trait NodeOracle {
    fn prune(&mut self, _node: &NodeBounds<'_>) -> bool {
        false
    }

    fn check_leaf(&mut self, assignment: &[i64], node: &NodeBounds<'_>) -> LeafVerdict;
}

struct AcceptAll;

impl NodeOracle for AcceptAll {
    fn check_leaf(&mut self, _assignment: &[i64], _node: &NodeBounds<'_>) -> LeafVerdict {
        LeafVerdict::Accept
    }
}

impl LinearModel {
    /// Solves the model exactly. The previous optimum, when still feasible,
    /// seeds the incumbent.
    pub fn solve(&mut self, options: &SolveOptions) -> Result<SolveOutcome, ModelError> {
        let hint = self.hint.take();
        let outcome = search(self, options, &mut AcceptAll, hint)?;
        if outcome.status == SolveStatus::Optimal {
            self.hint = outcome.assignment.clone();
        }
        Ok(outcome)
    }
}

/// Solves `model` with extra leaf and node checks supplied by `oracle`.
pub fn solve_with_oracle(
    model: &LinearModel,
    options: &SolveOptions,
    oracle: &mut dyn NodeOracle,
) -> Result<SolveOutcome, ModelError> {
    search(model, options, oracle, None)
}

fn search(
    model: &LinearModel,
    options: &SolveOptions,
    oracle: &mut dyn NodeOracle,
    hint: Option<Vec<i64>>,
) -> Result<SolveOutcome, ModelError> {
    if model.has_continuous() {
        return Err(ModelError::ContinuousVariables);
    }
    let mut s = Search {
        model,
        options,
        oracle,
        incumbent: None,
        root_bound: None,
        nodes: 0,
        pivots: 0,
        stop: false,
        timed_out: false,
    };
    if let Some(h) = hint.filter(|h| model.is_satisfied(h)) {
        let obj = model.objective_value(&h);
        s.incumbent = Some((obj, h));
        if options.objective_floor.is_some_and(|f| obj <= f) {
            s.stop = true;
        }
    }
    if !s.stop {
        s.dfs(DualSimplex::new(model), true);
    }
    let status = if s.timed_out {
        SolveStatus::TimedOut
    } else if s.incumbent.is_some() {
        SolveStatus::Optimal
    } else {
        SolveStatus::Infeasible
    };
    let (objective, assignment) = match s.incumbent {
        Some((o, a)) => (Some(o), Some(a)),
        None => (None, None),
    };
    let bound = match status {
        SolveStatus::Optimal => objective,
        _ => s.root_bound,
    };
    Ok(SolveOutcome { status, assignment, objective, bound, nodes: s.nodes, lp_pivots: s.pivots })
}

struct Search<'a> {
    model: &'a LinearModel,
    options: &'a SolveOptions,
    oracle: &'a mut dyn NodeOracle,
    incumbent: Option<(i64, Vec<i64>)>,
    root_bound: Option<i64>,
    nodes: u64,
    pivots: u64,
    stop: bool,
    timed_out: bool,
}

impl Search<'_> {
    fn out_of_time(&mut self) -> bool {
        if self.options.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
            self.stop = true;
        }
        self.stop
    }

    fn dfs(&mut self, mut lp: DualSimplex, root: bool) {
        if self.stop || self.out_of_time() {
            return;
        }
        self.nodes += 1;
        if self.oracle.prune(&NodeBounds { lp: &lp }) {
            return;
        }
        let before = lp.pivots();
        let status = lp.solve(self.options.deadline);
        self.pivots += lp.pivots() - before;
        match status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => return,
            LpStatus::TimedOut => {
                self.timed_out = true;
                self.stop = true;
                return;
            }
        }
        let z = lp.objective();
        let bound = (z - INTEGRALITY_TOL).ceil() as i64;
        if root {
            self.root_bound = Some(bound);
        }
        if let Some((best, _)) = &self.incumbent {
            if bound >= *best {
                return;
            }
            self.fix_by_reduced_cost(&mut lp, z, *best);
        }

        let n = lp.structural_count();
        let fractional = (0..n).find(|&j| {
            let v = lp.values()[j];
            (v - v.round()).abs() > INTEGRALITY_TOL
        });
        if let Some(j) = fractional {
            self.branch(lp, j);
            return;
        }

        let assignment: Vec<i64> = lp.values().iter().map(|v| v.round() as i64).collect();
        if !self.model.is_satisfied(&assignment) {
            // Relaxation drifted numerically; fall back to plain enumeration.
            if let Some(j) = (0..n).find(|&j| lp.lower(j) < lp.upper(j)) {
                self.branch(lp, j);
            }
            return;
        }
        match self.oracle.check_leaf(&assignment, &NodeBounds { lp: &lp }) {
            LeafVerdict::Accept => {
                let obj = self.model.objective_value(&assignment);
                if self.incumbent.as_ref().is_none_or(|(best, _)| obj < *best) {
                    self.incumbent = Some((obj, assignment));
                    if self.options.objective_floor.is_some_and(|f| obj <= f) {
                        self.stop = true;
                    }
                }
            }
            LeafVerdict::Branch(v) => {
                let j = v.index();
                debug_assert!(lp.lower(j) < lp.upper(j), "oracle asked to branch on a fixed variable");
                if lp.lower(j) < lp.upper(j) {
                    self.branch(lp, j);
                }
            }
            LeafVerdict::Prune => {}
        }
    }

    fn branch(&mut self, lp: DualSimplex, j: usize) {
        let mut one = lp.clone();
        one.fix(j, 1.0);
        self.dfs(one, false);
        if self.stop {
            return;
        }
        let mut zero = lp;
        zero.fix(j, 0.0);
        self.dfs(zero, false);
    }

    /// Fixes nonbasic variables whose flip would push the bound to the
    /// incumbent.
    fn fix_by_reduced_cost(&self, lp: &mut DualSimplex, z: f64, best: i64) {
        for j in 0..lp.structural_count() {
            if lp.is_basic(j) || lp.lower(j) == lp.upper(j) {
                continue;
            }
            let d = lp.reduced_cost(j);
            let x = lp.values()[j];
            if x == 0.0 && d > 0.0 && (z + d - INTEGRALITY_TOL).ceil() as i64 >= best {
                lp.fix(j, 0.0);
            } else if x == 1.0 && d < 0.0 && (z - d - INTEGRALITY_TOL).ceil() as i64 >= best {
                lp.fix(j, 1.0);
            }
        }
    }
}
