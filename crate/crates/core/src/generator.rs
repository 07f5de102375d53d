//! Seeded random hypergraph generator.
//!
//! Random numbers come from PCG32 (XSH-RR output, 64-bit LCG state,
//! multiplier `6364136223846793005`, increment `2 * stream + 1`). The state
//! and stream of instance `index` are the first two outputs of a SplitMix64
//! generator (increment `0x9e3779b97f4a7c15`, finalizer constants
//! `0xbf58476d1ce4e5b9`, `0x94d049bb133111eb`) started at
//! `seed ^ mix64((index + 1) * 0x9e3779b97f4a7c15)`, where `mix64` is the
//! SplitMix64 finalizer.
//!
//! Draws:
//! - `below(b)`: rejection sampling, draw `r` until `r >= (2^32 - b) % b`,
//!   return `r % b`.
//! - types 1-4: size `lo + below(hi - lo + 1)`, then vertices `1 + below(n)`
//!   until that many distinct ones were seen.
//! - type 5: for `v = 1..=n`, `v` is included when the top bit of the next
//!   output is set; draws of size below 2 and repeats of earlier hyperedges
//!   are discarded.

use std::collections::HashSet;

use crate::error::MciError;
use crate::hypergraph::{Hypergraph, Vertex};

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const PCG_MULTIPLIER: u64 = 6_364_136_223_846_793_005;

pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pcg32 {
    state: u64,
    inc: u64,
}

impl Pcg32 {
    /// Same seeding as the reference `pcg32_srandom_r`.
    pub fn new(init_state: u64, stream: u64) -> Self {
        let mut rng = Pcg32 { state: 0, inc: (stream << 1) | 1 };
        rng.next_u32();
        rng.state = rng.state.wrapping_add(init_state);
        rng.next_u32();
        rng
    }

    /// Generator for instance `index` of a run seeded with `seed`.
    pub fn for_instance(seed: u64, index: u64) -> Self {
        let mut sm = SplitMix64::new(seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
        let state = sm.next_u64();
        let stream = sm.next_u64();
        Pcg32::new(state, stream)
    }

    pub fn next_u32(&mut self) -> u32 {
        let old = self.state;
        self.state = old.wrapping_mul(PCG_MULTIPLIER).wrapping_add(self.inc);
        let xorshifted = (((old >> 18) ^ old) >> 27) as u32;
        let rot = (old >> 59) as u32;
        xorshifted.rotate_right(rot)
    }

    /// Uniform on `0..bound`.
    pub fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let r = self.next_u32();
            if r >= threshold {
                return r % bound;
            }
        }
    }

    /// Uniform on `lo..=hi`.
    pub fn between(&mut self, lo: u32, hi: u32) -> u32 {
        lo + self.below(hi - lo + 1)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u32() >> 31 == 1
    }
}

/// Generator parameters: `n` vertices, `density * n` hyperedges of type
/// `hyperedge_type`, `count` instances from `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub n: usize,
    pub density: usize,
    pub hyperedge_type: u8,
    pub count: usize,
    pub seed: u64,
}

impl Scenario {
    pub fn new(n: usize, density: usize, hyperedge_type: u8, count: usize, seed: u64) -> Result<Self, MciError> {
        let s = Scenario { n, density, hyperedge_type, count, seed };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), MciError> {
        if self.n < 2 {
            return Err(MciError::InvalidScenario(format!("n = {} (need at least 2)", self.n)));
        }
        if self.density == 0 {
            return Err(MciError::InvalidScenario("density must be positive".into()));
        }
        if self.count == 0 {
            return Err(MciError::InvalidScenario("count must be positive".into()));
        }
        if self.n > u32::MAX as usize {
            return Err(MciError::InvalidScenario(format!("n = {} is too large", self.n)));
        }
        if !(1..=5).contains(&self.hyperedge_type) {
            return Err(MciError::UnknownHyperedgeType(self.hyperedge_type));
        }
        if self.hyperedge_type != 5 {
            let (lo, hi) = size_bounds(self.hyperedge_type, self.n)?;
            if hi < lo {
                return Err(MciError::InvalidScenario(format!(
                    "type {} on {} vertices has an empty size range [{lo}, {hi}]",
                    self.hyperedge_type, self.n
                )));
            }
        } else {
            let available = distinct_hyperedges_available(self.n);
            if self.m() as u128 > available {
                return Err(MciError::NotEnoughDistinctHyperedges { wanted: self.m(), available });
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.density * self.n
    }

    pub fn file_name(&self, index: usize) -> String {
        format!("s{}_{}_{}_{}_{}.mci", self.n, self.density, self.hyperedge_type, self.seed, index)
    }

    pub fn instances(&self) -> impl Iterator<Item = Result<Hypergraph, MciError>> + '_ {
        (0..self.count).map(move |i| generate_instance(self, i))
    }
}

/// Number of vertex sets of size at least 2, `2^n - n - 1`, saturating.
pub fn distinct_hyperedges_available(n: usize) -> u128 {
    if n >= 127 {
        u128::MAX
    } else {
        (1u128 << n) - n as u128 - 1
    }
}

/// Inclusive size range of a hyperedge of the given type.
pub fn size_bounds(hyperedge_type: u8, n: usize) -> Result<(usize, usize), MciError> {
    let half = n.div_ceil(2);
    let quarter = n.div_ceil(4);
    match hyperedge_type {
        1 => Ok((2, n)),
        2 => Ok((2, half)),
        3 => Ok((quarter, n)),
        4 => Ok((quarter, half)),
        5 => Err(MciError::NoSizeBounds(5)),
        t => Err(MciError::UnknownHyperedgeType(t)),
    }
}

pub fn generate_instance(scenario: &Scenario, index: usize) -> Result<Hypergraph, MciError> {
    scenario.validate()?;
    if index >= scenario.count {
        return Err(MciError::IndexOutOfRange { index, count: scenario.count });
    }
    let mut rng = Pcg32::for_instance(scenario.seed, index as u64);
    let n = scenario.n;
    let m = scenario.m();
    let hyperedges = if scenario.hyperedge_type == 5 {
        let mut seen: HashSet<Vec<Vertex>> = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let s = bernoulli_set(&mut rng, n);
            if s.len() >= 2 && seen.insert(s.clone()) {
                out.push(s);
            }
        }
        out
    } else {
        let (lo, hi) = size_bounds(scenario.hyperedge_type, n)?;
        (0..m).map(|_| uniform_set(&mut rng, n, lo, hi)).collect()
    };
    Hypergraph::new(n, hyperedges)
}

fn bernoulli_set(rng: &mut Pcg32, n: usize) -> Vec<Vertex> {
    (1..=n).filter(|_| rng.coin()).collect()
}

fn uniform_set(rng: &mut Pcg32, n: usize, lo: usize, hi: usize) -> Vec<Vertex> {
    let size = rng.between(lo as u32, hi as u32) as usize;
    let mut chosen = vec![false; n + 1];
    let mut s = Vec::with_capacity(size);
    while s.len() < size {
        let v = 1 + rng.below(n as u32) as usize;
        if !chosen[v] {
            chosen[v] = true;
            s.push(v);
        }
    }
    s
}
