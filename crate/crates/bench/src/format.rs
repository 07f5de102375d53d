//! Plain-text instance files.
//!
//! ```text
//! # comment lines may appear anywhere
//! n m
//! k v1 ... vk      (m lines, 1-based vertices)
//! ```

use std::fmt::Write;

use mci_core::Hypergraph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("missing header `n m`")]
    MissingHeader,
    #[error("malformed header, expected `n m`")]
    MalformedHeader,
    #[error("need at least one vertex")]
    NoVertices,
    #[error("`{0}` is not a non-negative integer")]
    NotANumber(String),
    #[error("size {declared} but {listed} vertices listed")]
    SizeMismatch { declared: usize, listed: usize },
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed twice")]
    RepeatedVertex(usize),
    #[error("expected {expected} hyperedges, found {found}")]
    MissingHyperedges { expected: usize, found: usize },
    #[error("more than the {0} declared hyperedges")]
    ExtraHyperedge(usize),
}

fn numbers(line: &str, at: usize) -> Result<Vec<usize>, FormatError> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| FormatError { line: at, kind: FormatErrorKind::NotANumber(t.to_string()) }))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (at, header) = lines.next().ok_or(FormatError { line: 1, kind: FormatErrorKind::MissingHeader })?;
    let err = |line, kind| FormatError { line, kind };
    let head = numbers(header, at).map_err(|_| err(at, FormatErrorKind::MalformedHeader))?;
    let [n, m] = head[..] else {
        return Err(err(at, FormatErrorKind::MalformedHeader));
    };
    if n == 0 {
        return Err(err(at, FormatErrorKind::NoVertices));
    }
    let mut hyperedges = Vec::with_capacity(m);
    let mut last = at;
    for (at, line) in lines {
        last = at;
        if hyperedges.len() == m {
            return Err(err(at, FormatErrorKind::ExtraHyperedge(m)));
        }
        let nums = numbers(line, at)?;
        let (declared, vertices) = (nums[0], &nums[1..]);
        if declared != vertices.len() {
            return Err(err(at, FormatErrorKind::SizeMismatch { declared, listed: vertices.len() }));
        }
        if let Some(&vertex) = vertices.iter().find(|&&v| v == 0 || v > n) {
            return Err(err(at, FormatErrorKind::VertexOutOfRange { vertex, n }));
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(err(at, FormatErrorKind::RepeatedVertex(w[0])));
        }
        hyperedges.push(sorted);
    }
    if hyperedges.len() < m {
        return Err(err(last, FormatErrorKind::MissingHyperedges { expected: m, found: hyperedges.len() }));
    }
    Ok(Hypergraph::new(n, hyperedges).expect("validated above"))
}

pub fn write_instance(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    for s in h.hyperedges() {
        let _ = write!(out, "{}", s.len());
        for v in s {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
