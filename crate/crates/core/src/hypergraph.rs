use std::fmt;

use crate::error::MciError;

pub type Vertex = usize;

/// Unordered vertex pair stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Panics on a self-loop.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        Edge { u: a.min(b), v: a.max(b) }
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Vertices `1..=n` and an ordered list of hyperedges, each a sorted set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each hyperedge. Hyperedges may repeat;
    /// a vertex may not repeat inside one hyperedge.
    pub fn new(n: usize, hyperedges: Vec<Vec<Vertex>>) -> Result<Self, MciError> {
        if n == 0 {
            return Err(MciError::EmptyVertexSet);
        }
        let mut sorted = Vec::with_capacity(hyperedges.len());
        for (i, mut s) in hyperedges.into_iter().enumerate() {
            s.sort_unstable();
            if let Some(&v) = s.iter().find(|&&v| v == 0 || v > n) {
                return Err(MciError::VertexOutOfRange { hyperedge: i, vertex: v, n });
            }
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(MciError::RepeatedVertex { hyperedge: i, vertex: w[0] });
            }
            sorted.push(s);
        }
        Ok(Hypergraph { n, hyperedges: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn density(&self) -> f64 {
        self.m() as f64 / self.n as f64
    }

    pub fn hyperedges(&self) -> &[Vec<Vertex>] {
        &self.hyperedges
    }

    pub fn hyperedge(&self, i: usize) -> &[Vertex] {
        &self.hyperedges[i]
    }

    /// The graph joining every two vertices that share a hyperedge.
    pub fn support_graph(&self) -> SolutionGraph {
        let mut edges = Vec::new();
        for s in &self.hyperedges {
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    edges.push(Edge::new(a, b));
                }
            }
        }
        SolutionGraph::from_edges(self.n, edges)
    }

    /// Indices (input order) of hyperedges whose induced subgraph in `g` is
    /// disconnected. Empty means `g` is feasible.
    pub fn violated_hyperedges(&self, g: &SolutionGraph) -> Vec<usize> {
        let adj = g.adjacency();
        self.hyperedges
            .iter()
            .enumerate()
            .filter(|(_, s)| !induces_connected(&adj, self.n, s))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_feasible(&self, g: &SolutionGraph) -> (bool, Vec<usize>) {
        let violated = self.violated_hyperedges(g);
        (violated.is_empty(), violated)
    }
}

/// A simple undirected graph on `1..=n`; edges are kept sorted and unique,
/// which makes equality and ordering canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SolutionGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        assert!(edges.iter().all(|e| e.v <= n && e.u >= 1), "edge outside 1..={n}");
        edges.sort_unstable();
        edges.dedup();
        SolutionGraph { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        SolutionGraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_subgraph_of(&self, other: &SolutionGraph) -> bool {
        self.edges.iter().all(|&e| other.contains(e))
    }

    /// Connected components of the subgraph induced by `s`, each sorted,
    /// listed by smallest member.
    pub fn induced_components(&self, s: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut slot = vec![usize::MAX; self.n + 1];
        for (i, &v) in s.iter().enumerate() {
            slot[v] = i;
        }
        let mut uf = UnionFind::new(s.len());
        for e in &self.edges {
            let (a, b) = (slot[e.u], slot[e.v]);
            if a != usize::MAX && b != usize::MAX {
                uf.union(a, b);
            }
        }
        let mut order: Vec<Vertex> = s.to_vec();
        order.sort_unstable();
        let mut comp_of_root = vec![usize::MAX; s.len()];
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        for v in order {
            let r = uf.find(slot[v]);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[comp_of_root[r]].push(v);
        }
        comps
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }
}

impl fmt::Display for SolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

fn induces_connected(adj: &[Vec<Vertex>], n: usize, s: &[Vertex]) -> bool {
    if s.len() <= 1 {
        return true;
    }
    let mut inside = vec![false; n + 1];
    for &v in s {
        inside[v] = true;
    }
    let mut seen = vec![false; n + 1];
    let mut stack = vec![s[0]];
    seen[s[0]] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if inside[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == s.len()
}

/// Disjoint-set forest with union by size and path compression.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind { parent: (0..len).collect(), size: vec![1; len] }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while i != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn g(n: usize, edges: &[(usize, usize)]) -> SolutionGraph {
        SolutionGraph::from_edges(n, edges.iter().map(|&(a, b)| Edge::new(a, b)))
    }

    #[test]
    fn support_graph_examples() {
        assert_eq!(h(3, &[&[1, 2, 3]]).support_graph(), g(3, &[(1, 2), (1, 3), (2, 3)]));
        assert_eq!(h(4, &[&[1, 2], &[3, 4]]).support_graph(), g(4, &[(1, 2), (3, 4)]));
        assert_eq!(h(3, &[&[1, 2], &[2, 3], &[1, 3]]).support_graph(), g(3, &[(1, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn induced_component_examples() {
        assert_eq!(g(3, &[(1, 2)]).induced_components(&[1, 2, 3]), vec![vec![1, 2], vec![3]]);
        assert_eq!(g(3, &[(1, 2), (2, 3)]).induced_components(&[1, 2, 3]), vec![vec![1, 2, 3]]);
        assert_eq!(g(4, &[(1, 2), (3, 4)]).induced_components(&[1, 2, 3, 4]), vec![vec![1, 2], vec![3, 4]]);
        // edges leaving s do not connect it
        assert_eq!(g(3, &[(1, 2), (2, 3)]).induced_components(&[1, 3]), vec![vec![1], vec![3]]);
    }

    #[test]
    fn feasibility_examples() {
        let tri = h(3, &[&[1, 2, 3]]);
        assert_eq!(tri.is_feasible(&tri.support_graph()), (true, vec![]));
        assert_eq!(tri.is_feasible(&g(3, &[(1, 2)])), (false, vec![0]));
        let two = h(4, &[&[1, 2, 3], &[2, 3, 4]]);
        assert_eq!(two.is_feasible(&g(4, &[(1, 2), (2, 3), (3, 4)])), (true, vec![]));
        assert_eq!(two.is_feasible(&g(4, &[(1, 2), (3, 4)])), (false, vec![0, 1]));
    }

    #[test]
    fn tiny_hyperedges_are_trivially_connected() {
        let hg = h(3, &[&[2], &[]]);
        assert_eq!(hg.is_feasible(&SolutionGraph::empty(3)), (true, vec![]));
        assert_eq!(hg.support_graph().edge_count(), 0);
    }

    #[test]
    fn invalid_hypergraphs_rejected() {
        assert_eq!(Hypergraph::new(0, vec![]), Err(MciError::EmptyVertexSet));
        assert_eq!(
            Hypergraph::new(3, vec![vec![1, 4]]),
            Err(MciError::VertexOutOfRange { hyperedge: 0, vertex: 4, n: 3 })
        );
        assert_eq!(
            Hypergraph::new(3, vec![vec![1, 2], vec![2, 1, 2]]),
            Err(MciError::RepeatedVertex { hyperedge: 1, vertex: 2 })
        );
    }

    #[test]
    fn duplicate_hyperedges_kept() {
        let hg = h(3, &[&[3, 1, 2], &[1, 2, 3]]);
        assert_eq!(hg.m(), 2);
        assert_eq!(hg.hyperedge(0), &[1, 2, 3]);
    }

    #[test]
    fn solution_graph_is_canonical() {
        let a = SolutionGraph::from_edges(4, [Edge::new(3, 1), Edge::new(1, 2), Edge::new(1, 3)]);
        assert_eq!(a.edges(), &[Edge::new(1, 2), Edge::new(1, 3)]);
        assert_eq!(a.to_string(), "1-2 1-3");
    }

    #[test]
    #[should_panic]
    fn self_loops_panic() {
        let _ = Edge::new(2, 2);
    }
}
