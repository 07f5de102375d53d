//! Cut families and the separation routines that generate them.
//!
//! A cut `(X_1, ..., X_r)` of a hyperedge yields the row
//! `sum of x_e over pairs crossing distinct parts >= r - 1`, which forbids the
//! parts from being exactly the connected components of the solution.

use std::collections::HashSet;
use std::fmt;

use crate::error::MciError;
use crate::hypergraph::{Edge, Hypergraph, Vertex};

/// Disjoint nonempty vertex sets inside one hyperedge, in canonical form:
/// each part sorted, parts ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    hyperedge: usize,
    parts: Vec<Vec<Vertex>>,
}

impl Cut {
    pub fn new(hyperedge: usize, parts: Vec<Vec<Vertex>>) -> Result<Self, MciError> {
        if parts.len() < 2 {
            return Err(MciError::TooFewComponents(parts.len()));
        }
        let mut parts: Vec<Vec<Vertex>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        assert!(parts.iter().all(|p| !p.is_empty()), "empty cut part");
        parts.sort_unstable_by_key(|p| p[0]);
        let mut all: Vec<Vertex> = parts.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), total, "cut parts overlap");
        Ok(Cut { hyperedge, parts })
    }

    pub fn hyperedge(&self) -> usize {
        self.hyperedge
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    /// Number of parts `r`.
    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    /// Right-hand side `r - 1` of the cut's row.
    pub fn demand(&self) -> usize {
        self.parts.len() - 1
    }

    /// Every pair whose endpoints lie in distinct parts, sorted.
    pub fn crossing_pairs(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            for q in &self.parts[i + 1..] {
                for &a in p {
                    for &b in q {
                        out.push(Edge::new(a, b));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let items: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        f.write_str(")")
    }
}

/// Deduplicating cut store. Two cuts with the same parts are the same row,
/// whichever hyperedge produced them.
#[derive(Debug, Clone, Default)]
pub struct CutPool {
    seen: HashSet<Vec<Vec<Vertex>>>,
    cuts: Vec<Cut>,
}

impl CutPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, cut: Cut) -> bool {
        if self.seen.insert(cut.parts.clone()) {
            self.cuts.push(cut);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, cut: &Cut) -> bool {
        self.seen.contains(&cut.parts)
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }
}

/// `({v}, S \ {v})` for every hyperedge `S` with at least two vertices and
/// every `v` in `S`, deduplicated.
pub fn singleton_cuts(h: &Hypergraph) -> Vec<Cut> {
    let mut pool = CutPool::new();
    for (i, s) in h.hyperedges().iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for &v in s {
            let rest: Vec<Vertex> = s.iter().copied().filter(|&w| w != v).collect();
            pool.insert(Cut::new(i, vec![vec![v], rest]).expect("two parts"));
        }
    }
    pool.cuts
}

/// Greedy number partitioning of whole components into two sides.
///
/// Components are taken by decreasing size (ties: smallest member first);
/// each goes to `A` while `|A| < |B|`, otherwise to `B`. The larger side is
/// within 7/6 of the best possible.
pub fn greedy_balanced_bipartition(components: &[Vec<Vertex>]) -> Result<(Vec<Vertex>, Vec<Vertex>), MciError> {
    if components.len() < 2 {
        return Err(MciError::TooFewComponents(components.len()));
    }
    let mut order: Vec<&Vec<Vertex>> = components.iter().collect();
    order.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.iter().min().copied()));
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for c in order {
        if a.len() < b.len() {
            a.extend_from_slice(c);
        } else {
            b.extend_from_slice(c);
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    Ok((a, b))
}

/// Separation policy applied to a disconnected hyperedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Routine {
    /// One cut from a balanced bipartition of the components.
    BalancedBipartition,
    /// One cut per component against the union of the others.
    ComponentVersusRest,
    /// One cut whose parts are all the components.
    AllComponents,
}

impl Routine {
    pub const ALL: [Routine; 3] = [Routine::BalancedBipartition, Routine::ComponentVersusRest, Routine::AllComponents];

    pub fn from_number(k: u8) -> Result<Self, MciError> {
        match k {
            1 => Ok(Routine::BalancedBipartition),
            2 => Ok(Routine::ComponentVersusRest),
            3 => Ok(Routine::AllComponents),
            _ => Err(MciError::UnknownRoutine(k)),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Routine::BalancedBipartition => 1,
            Routine::ComponentVersusRest => 2,
            Routine::AllComponents => 3,
        }
    }

    /// Cuts for hyperedge `hyperedge` whose induced subgraph split into
    /// `components` (at least two).
    pub fn cuts(self, hyperedge: usize, components: &[Vec<Vertex>]) -> Result<Vec<Cut>, MciError> {
        if components.len() < 2 {
            return Err(MciError::TooFewComponents(components.len()));
        }
        match self {
            Routine::BalancedBipartition => {
                let (a, b) = greedy_balanced_bipartition(components)?;
                Ok(vec![Cut::new(hyperedge, vec![a, b])?])
            }
            Routine::ComponentVersusRest => components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let rest: Vec<Vertex> = components
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .flat_map(|(_, d)| d.iter().copied())
                        .collect();
                    Cut::new(hyperedge, vec![c.clone(), rest])
                })
                .collect(),
            Routine::AllComponents => Ok(vec![Cut::new(hyperedge, components.to_vec())?]),
        }
    }
}

/// `sum over hyperedges of (2^(|S|-1) - 1)`, saturating at `u128::MAX`.
pub fn bipartition_cut_count(h: &Hypergraph) -> u128 {
    h.hyperedges().iter().fold(0u128, |acc, s| {
        let per = match s.len() {
            0 => 0,
            k if k > 128 => u128::MAX,
            k => (1u128 << (k - 1)) - 1,
        };
        acc.saturating_add(per)
    })
}

/// Every non-trivial bipartition cut of every hyperedge, deduplicated.
pub fn all_bipartition_cuts(h: &Hypergraph, limit: u128) -> Result<Vec<Cut>, MciError> {
    let needed = bipartition_cut_count(h);
    if needed > limit {
        return Err(MciError::TooManyCuts { needed, limit });
    }
    let mut pool = CutPool::new();
    for (i, s) in h.hyperedges().iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        let rest = &s[1..];
        let full = (1usize << rest.len()) - 1;
        for mask in 0..full {
            let mut x = vec![s[0]];
            let mut y = Vec::new();
            for (k, &v) in rest.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    x.push(v);
                } else {
                    y.push(v);
                }
            }
            pool.insert(Cut::new(i, vec![x, y])?);
        }
    }
    Ok(pool.cuts)
}
