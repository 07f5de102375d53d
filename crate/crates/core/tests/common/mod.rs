//! Brute-force reference implementations used as test oracles. Nothing here
//! calls into the solvers; graphs are edge bitmasks over the support pairs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mci_core::{Edge, Hypergraph, SolutionGraph};
use proptest::prelude::*;

/// Sorted list of vertex pairs lying together in some hyperedge.
pub fn support_pairs(h: &Hypergraph) -> Vec<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for s in h.hyperedges() {
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    pairs.into_iter().collect()
}

fn vertex_mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &v| m | 1 << v)
}

/// Neighbour masks of the graph made of the pairs selected by `chosen`.
fn adjacency(n: usize, pairs: &[(usize, usize)], chosen: u64) -> Vec<u64> {
    let mut adj = vec![0u64; n + 1];
    let mut rest = chosen;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (a, b) = pairs[i];
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

fn spans(adj: &[u64], s: &[usize]) -> bool {
    let Some(&first) = s.first() else { return true };
    let target = vertex_mask(s);
    let mut seen = 1u64 << first;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & target & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == target
}

/// Whether `s` induces a connected subgraph of the edge list.
pub fn induces_connected(n: usize, edges: &[(usize, usize)], s: &[usize]) -> bool {
    let all = if edges.len() == 64 { u64::MAX } else { (1u64 << edges.len()) - 1 };
    spans(&adjacency(n, edges, all), s)
}

pub fn mask_feasible(h: &Hypergraph, pairs: &[(usize, usize)], chosen: u64) -> bool {
    let adj = adjacency(h.n(), pairs, chosen);
    h.hyperedges().iter().all(|s| spans(&adj, s))
}

pub fn graph_feasible(h: &Hypergraph, edges: &[(usize, usize)]) -> bool {
    h.hyperedges().iter().all(|s| induces_connected(h.n(), edges, s))
}

/// Calls `f` on every `k`-subset of `0..len` as a bitmask, in increasing
/// numeric order, until it returns false.
pub fn for_each_subset(len: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    assert!(len < 64);
    if k > len {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut c: u64 = (1 << k) - 1;
    while c < 1 << len {
        if !f(c) {
            return;
        }
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
}

fn lower_bound(h: &Hypergraph) -> usize {
    h.hyperedges().iter().map(|s| s.len().saturating_sub(1)).max().unwrap_or(0)
}

/// Smallest number of support pairs whose graph is feasible, by trying all
/// subsets in order of size.
pub fn brute_force_minimum(h: &Hypergraph) -> usize {
    let pairs = support_pairs(h);
    for k in lower_bound(h)..=pairs.len() {
        let mut hit = false;
        for_each_subset(pairs.len(), k, |c| {
            hit = mask_feasible(h, &pairs, c);
            !hit
        });
        if hit {
            return k;
        }
    }
    unreachable!("the support graph is feasible")
}

/// Every feasible graph of minimum size, as sorted pair lists.
pub fn brute_force_optimal(h: &Hypergraph) -> BTreeSet<Vec<(usize, usize)>> {
    let pairs = support_pairs(h);
    for k in lower_bound(h)..=pairs.len() {
        let mut found = BTreeSet::new();
        for_each_subset(pairs.len(), k, |c| {
            if mask_feasible(h, &pairs, c) {
                found.insert(select(&pairs, c));
            }
            true
        });
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!("the support graph is feasible")
}

pub fn select(pairs: &[(usize, usize)], chosen: u64) -> Vec<(usize, usize)> {
    pairs.iter().enumerate().filter(|(i, _)| chosen >> i & 1 == 1).map(|(_, &p)| p).collect()
}

pub fn pairs_of(g: &SolutionGraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| e.endpoints()).collect()
}

pub fn graph_of(n: usize, pairs: &[(usize, usize)]) -> SolutionGraph {
    SolutionGraph::from_edges(n, pairs.iter().map(|&(a, b)| Edge::new(a, b)))
}

/// Hypergraphs on `n` vertices in `n_range` with up to `max_m` hyperedges of
/// size 2..=`max_size`.
pub fn arb_hypergraph(
    n_range: std::ops::RangeInclusive<usize>,
    max_m: usize,
    max_size: usize,
) -> impl Strategy<Value = Hypergraph> {
    n_range.prop_flat_map(move |n| {
        let edge = proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 2..=max_size.min(n));
        proptest::collection::vec(edge, 1..=max_m).prop_map(move |es| Hypergraph::new(n, es).unwrap())
    })
}

/// Random graph on `1..=n`, each pair present with the given probability
/// (in percent).
pub fn arb_graph(n: usize) -> impl Strategy<Value = SolutionGraph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    (0u32..=100).prop_flat_map(move |p| {
        let pairs = pairs.clone();
        proptest::collection::vec(0u32..100, pairs.len()).prop_map(move |draws| {
            let kept: Vec<_> = pairs.iter().zip(&draws).filter(|(_, &d)| d < p).map(|(&e, _)| e).collect();
            graph_of(n, &kept)
        })
    })
}
