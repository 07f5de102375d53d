//! Flow-based MILP baseline.
//!
//! For every hyperedge `S` with root `r_S` (its smallest vertex) the model has
//! a flow variable per arc of the complete digraph on `S` and the rows
//!
//! * `sum_{u,v in S} x_uv >= |S| - 1`,
//! * inflow minus outflow `= -1` at every `v in S \ {r_S}`,
//! * `f_uv + f_vu <= (|S| - 1) x_uv` for every pair in `S`,
//! * `f >= 0` (variable bounds).
//!
//! The exported model keeps this literal form. The internal solve branches
//! on the `x` variables only: a flow satisfying the rows exists exactly when
//! every `G[S]` is connected, so integral leaves are checked combinatorially
//! and a node is dropped once the edges not fixed to zero cannot connect
//! some hyperedge (the flow relaxation is then infeasible).

use std::time::{Duration, Instant};

use mci_ilp::{
    solve_with_oracle, Constraint, Group, LeafVerdict, LinearModel, NodeBounds, NodeOracle, Sense, SolveOptions,
    SolveStatus, VarId,
};

use crate::cga::{build_model, EdgeVars, MciRun, RunStats, SPANNING_GROUP};
use crate::error::MciError;
use crate::hypergraph::{Edge, Hypergraph, SolutionGraph, UnionFind, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FamilySizes {
    pub spanning: usize,
    pub conservation: usize,
    pub capacity: usize,
}

impl FamilySizes {
    pub fn total(&self) -> usize {
        self.spanning + self.conservation + self.capacity
    }
}

#[derive(Debug, Clone)]
pub struct FlowModel {
    pub model: LinearModel,
    pub vars: EdgeVars,
    /// `r_S` per hyperedge; `None` for an empty hyperedge.
    pub roots: Vec<Option<Vertex>>,
    pub families: FamilySizes,
}

impl FlowModel {
    pub fn binary_count(&self) -> usize {
        self.vars.len()
    }

    pub fn continuous_count(&self) -> usize {
        self.model.var_count() - self.vars.len()
    }
}

pub fn flow_var_name(k: usize, u: Vertex, v: Vertex) -> String {
    format!("f_S{k}_{u}_{v}")
}

pub fn build_flow_model(h: &Hypergraph) -> Result<FlowModel, MciError> {
    let mut model = LinearModel::new();
    let vars = EdgeVars::declare(&mut model, h)?;
    let mut roots = Vec::with_capacity(h.m());
    let mut spanning = Vec::new();
    let mut conservation = Vec::new();
    let mut capacity = Vec::new();

    for (k, s) in h.hyperedges().iter().enumerate() {
        roots.push(s.first().copied());
        let mut arc = std::collections::HashMap::new();
        for &u in s {
            for &v in s {
                if u != v {
                    arc.insert((u, v), model.add_continuous(flow_var_name(k, u, v), 0)?);
                }
            }
        }
        let pairs: Vec<Edge> =
            s.iter().enumerate().flat_map(|(i, &a)| s[i + 1..].iter().map(move |&b| Edge::new(a, b))).collect();
        spanning.push(
            Constraint::new(vars.row(pairs.iter().copied(), 1), Sense::Ge, s.len() as i64 - 1)
                .named(format!("span_S{k}")),
        );
        if let Some(&root) = s.first() {
            for &v in s.iter().filter(|&&v| v != root) {
                let mut terms: Vec<(VarId, i64)> = Vec::with_capacity(2 * (s.len() - 1));
                for &w in s.iter().filter(|&&w| w != v) {
                    terms.push((arc[&(w, v)], 1));
                    terms.push((arc[&(v, w)], -1));
                }
                conservation.push(Constraint::new(terms, Sense::Eq, -1).named(format!("flow_S{k}_{v}")));
            }
        }
        for e in &pairs {
            let (u, v) = e.endpoints();
            let x = vars.var(*e).expect("pair of a hyperedge is a support edge");
            let terms = vec![(arc[&(u, v)], 1), (arc[&(v, u)], 1), (x, -(s.len() as i64 - 1))];
            capacity.push(Constraint::new(terms, Sense::Le, 0).named(format!("cap_S{k}_{u}_{v}")));
        }
    }

    let families =
        FamilySizes { spanning: spanning.len(), conservation: conservation.len(), capacity: capacity.len() };
    model.add_constraints(spanning, &Group::new(SPANNING_GROUP))?;
    model.add_constraints(conservation, &Group::new("conservation"))?;
    model.add_constraints(capacity, &Group::new("capacity"))?;
    Ok(FlowModel { model, vars, roots, families })
}

/// Rows of the flow model, excluding the nonnegativity bounds.
pub fn flow_constraint_count(h: &Hypergraph) -> usize {
    h.hyperedges()
        .iter()
        .map(|s| {
            let k = s.len();
            1 + k.saturating_sub(1) + k * k.saturating_sub(1) / 2
        })
        .sum()
}

/// Arc flows on one hyperedge, sorted by arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowWitness {
    Flow(Vec<((Vertex, Vertex), i64)>),
    Disconnected,
}

/// Flow meeting the conservation, capacity and sign rows for `s` under the
/// edges of `g`, built from a BFS tree of `G[s]` rooted at `root`: the arc
/// from each vertex to its parent carries the size of its subtree.
pub fn flow_witness(g: &SolutionGraph, s: &[Vertex], root: Vertex) -> Result<FlowWitness, MciError> {
    if !s.contains(&root) {
        return Err(MciError::RootNotInHyperedge { root });
    }
    let mut inside = vec![false; g.n() + 1];
    for &v in s {
        inside[v] = true;
    }
    let mut adj = g.adjacency();
    for list in &mut adj {
        list.retain(|&w| inside[w]);
        list.sort_unstable();
    }
    let mut parent = vec![0usize; g.n() + 1];
    let mut seen = vec![false; g.n() + 1];
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    if order.len() < s.len() {
        return Ok(FlowWitness::Disconnected);
    }
    let mut subtree = vec![1i64; g.n() + 1];
    let mut flows = Vec::with_capacity(s.len() - 1);
    for &v in order.iter().skip(1).rev() {
        subtree[parent[v]] += subtree[v];
        flows.push(((v, parent[v]), subtree[v]));
    }
    flows.sort_unstable();
    Ok(FlowWitness::Flow(flows))
}

/// Evaluates the conservation, capacity and sign rows of hyperedge `s` with
/// root `root` for the given arc flows (missing arcs carry zero) and the
/// edges of `g` as `x`.
pub fn flow_satisfies(g: &SolutionGraph, s: &[Vertex], root: Vertex, flows: &[((Vertex, Vertex), i64)]) -> bool {
    let f = |u: Vertex, v: Vertex| flows.iter().find(|(a, _)| *a == (u, v)).map_or(0, |&(_, x)| x);
    if flows.iter().any(|&((u, v), x)| x < 0 || u == v || !s.contains(&u) || !s.contains(&v)) {
        return false;
    }
    let conserved = s.iter().filter(|&&v| v != root).all(|&v| {
        let inflow: i64 = s.iter().filter(|&&w| w != v).map(|&w| f(w, v)).sum();
        let outflow: i64 = s.iter().filter(|&&w| w != v).map(|&w| f(v, w)).sum();
        inflow - outflow == -1
    });
    let cap = (s.len() as i64 - 1).max(0);
    let capacity = s.iter().enumerate().all(|(i, &u)| {
        s[i + 1..].iter().all(|&v| {
            let x = i64::from(g.contains(Edge::new(u, v)));
            f(u, v) + f(v, u) <= cap * x
        })
    });
    conserved && capacity
}

/// A component of `G[s]` avoiding `root`, if `G[s]` is disconnected. Summing
/// the conservation rows over it requires `|component|` units to leave it,
/// yet every pair crossing its boundary has `x = 0` and hence zero capacity.
pub fn disconnection_certificate(g: &SolutionGraph, s: &[Vertex], root: Vertex) -> Option<Vec<Vertex>> {
    g.induced_components(s).into_iter().find(|c| !c.contains(&root))
}

struct ConnectivityOracle {
    /// Per hyperedge of size >= 2: its vertices and the pair variables as
    /// (local index, local index, var).
    hyperedges: Vec<(Vec<Vertex>, Vec<(usize, usize, VarId)>)>,
    vars: EdgeVars,
    n: usize,
}

impl ConnectivityOracle {
    fn new(h: &Hypergraph, vars: EdgeVars) -> Self {
        let hyperedges = h
            .hyperedges()
            .iter()
            .filter(|s| s.len() >= 2)
            .map(|s| {
                let mut pairs = Vec::new();
                for (i, &a) in s.iter().enumerate() {
                    for (j, &b) in s.iter().enumerate().skip(i + 1) {
                        pairs.push((i, j, vars.var(Edge::new(a, b)).expect("support edge")));
                    }
                }
                (s.clone(), pairs)
            })
            .collect();
        ConnectivityOracle { hyperedges, vars, n: h.n() }
    }
}

impl NodeOracle for ConnectivityOracle {
    fn prune(&mut self, node: &NodeBounds<'_>) -> bool {
        self.hyperedges.iter().any(|(s, pairs)| {
            let mut uf = UnionFind::new(s.len());
            let mut joined = 1;
            for &(a, b, v) in pairs {
                if node.may_be_one(v) && uf.union(a, b) {
                    joined += 1;
                }
            }
            joined < s.len()
        })
    }

    fn check_leaf(&mut self, assignment: &[i64], node: &NodeBounds<'_>) -> LeafVerdict {
        let g = self.vars.graph(assignment);
        let mut label = vec![usize::MAX; self.n + 1];
        for (s, pairs) in &self.hyperedges {
            let comps = g.induced_components(s);
            if comps.len() < 2 {
                continue;
            }
            for (c, comp) in comps.iter().enumerate() {
                for &v in comp {
                    label[v] = c;
                }
            }
            let pick = pairs
                .iter()
                .filter(|&&(a, b, v)| label[s[a]] != label[s[b]] && node.is_free(v))
                .map(|&(_, _, v)| v)
                .min();
            return match pick {
                Some(v) => LeafVerdict::Branch(v),
                None => LeafVerdict::Prune,
            };
        }
        LeafVerdict::Accept
    }
}

/// Optimal MCI graph through the flow formulation's combinatorial
/// equivalent: bounds from the spanning rows, connectivity at the leaves.
pub fn solve_flow_baseline(h: &Hypergraph, time_limit: Option<Duration>) -> Result<MciRun, MciError> {
    let start = Instant::now();
    let deadline = time_limit.and_then(|t| start.checked_add(t));
    let (model, vars, _) = build_model(h, &[])?;
    let mut oracle = ConnectivityOracle::new(h, vars.clone());
    let out = solve_with_oracle(&model, &SolveOptions::default().deadline(deadline), &mut oracle)?;
    let stats = RunStats {
        iterations: 1,
        final_constraint_count: flow_constraint_count(h),
        solver_calls: 1,
        wall_time: start.elapsed(),
        timed_out: out.status == SolveStatus::TimedOut,
        objective_trace: out.objective.into_iter().collect(),
        nodes: out.nodes,
    };
    let graph = out.assignment.as_deref().map(|a| vars.graph(a));
    match out.status {
        SolveStatus::Optimal => Ok(MciRun { graph, solved: true, stats }),
        SolveStatus::TimedOut => Ok(MciRun { graph, solved: false, stats }),
        SolveStatus::Infeasible => Err(MciError::UnexpectedInfeasibility),
    }
}
