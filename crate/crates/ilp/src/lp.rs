//! Dual simplex over boxed variables with a compact tableau.
//!
//! Every constraint row `r` gets a row variable `s_r = a_r . x` whose bounds
//! encode the sense (`>=` gives `[rhs, inf)`, `<=` gives `(-inf, rhs]`, `=`
//! gives `[rhs, rhs]`). Structural variables live in `[0, 1]`. Starting from
//! the all-row-variable basis every nonbasic structural column sits at the
//! bound matching the sign of its cost, so the start is dual feasible and no
//! phase one is needed. Branching only tightens bounds, which keeps the
//! tableau dual feasible and lets children restart from the parent's basis.
//!
//! The tableau stores each basic variable as a combination of the nonbasic
//! ones, `x_B[i] = sum_k d[i][k] x_N[k]`, so it has one column per structural
//! variable however many rows the model has.

use std::sync::Arc;
use std::time::Instant;

use crate::model::{LinearModel, Sense};

const PRIMAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-12;
const REFACTOR_EVERY: usize = 400;
const STALL_BEFORE_BLAND: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    TimedOut,
}

#[derive(Debug)]
struct Source {
    rows: Vec<Vec<(usize, f64)>>,
    cost: Vec<f64>,
}

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct DualSimplex {
    structural: usize,
    rows: usize,
    /// `rows x structural`, row-major.
    tab: Vec<f64>,
    /// Reduced cost per nonbasic slot.
    reduced: Vec<f64>,
    basis: Vec<usize>,
    nonbasic: Vec<usize>,
    row_of: Vec<usize>,
    slot_of: Vec<usize>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    value: Vec<f64>,
    since_refactor: usize,
    pivots: u64,
    source: Arc<Source>,
}

impl DualSimplex {
    /// Relaxation of `model` with every variable in `[0, 1]`.
    pub fn new(model: &LinearModel) -> Self {
        let n = model.var_count();
        let m = model.constraint_count();
        let width = n + m;
        let cost: Vec<f64> =
            (0..width).map(|j| if j < n { model.variables()[j].objective as f64 } else { 0.0 }).collect();
        let mut lower = vec![0.0; width];
        let mut upper = vec![1.0; width];
        let mut source_rows = Vec::with_capacity(m);
        let mut tab = vec![0.0; m * n];
        for (r, row) in model.rows().iter().enumerate() {
            let c = &row.constraint;
            let rhs = c.rhs as f64;
            let (lo, hi) = match c.sense {
                Sense::Ge => (rhs, f64::INFINITY),
                Sense::Le => (f64::NEG_INFINITY, rhs),
                Sense::Eq => (rhs, rhs),
            };
            lower[n + r] = lo;
            upper[n + r] = hi;
            let terms: Vec<(usize, f64)> = c.terms.iter().map(|&(v, a)| (v.index(), a as f64)).collect();
            for &(j, a) in &terms {
                tab[r * n + j] = a;
            }
            source_rows.push(terms);
        }
        let reduced = cost[..n].to_vec();
        let mut value = vec![0.0; width];
        for j in 0..n {
            value[j] = if reduced[j] >= 0.0 { lower[j] } else { upper[j] };
        }
        let mut lp = DualSimplex {
            structural: n,
            rows: m,
            tab,
            reduced,
            basis: (n..width).collect(),
            nonbasic: (0..n).collect(),
            row_of: (0..width).map(|j| if j < n { NONE } else { j - n }).collect(),
            slot_of: (0..width).map(|j| if j < n { j } else { NONE }).collect(),
            lower,
            upper,
            value,
            since_refactor: 0,
            pivots: 0,
            source: Arc::new(Source { rows: source_rows, cost }),
        };
        lp.recompute_basic_values();
        lp
    }

    pub fn structural_count(&self) -> usize {
        self.structural
    }

    pub fn pivots(&self) -> u64 {
        self.pivots
    }

    pub fn values(&self) -> &[f64] {
        &self.value[..self.structural]
    }

    pub fn lower(&self, j: usize) -> f64 {
        self.lower[j]
    }

    pub fn upper(&self, j: usize) -> f64 {
        self.upper[j]
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.row_of[j] != NONE
    }

    /// Zero for basic variables.
    pub fn reduced_cost(&self, j: usize) -> f64 {
        match self.slot_of[j] {
            NONE => 0.0,
            k => self.reduced[k],
        }
    }

    pub fn objective(&self) -> f64 {
        self.source.cost[..self.structural].iter().zip(&self.value).map(|(c, x)| c * x).sum()
    }

    /// Fixes structural variable `j` to `v`.
    pub fn fix(&mut self, j: usize, v: f64) {
        self.lower[j] = v;
        self.upper[j] = v;
        if self.row_of[j] == NONE && self.value[j] != v {
            self.value[j] = v;
            self.recompute_basic_values();
        }
    }

    pub fn solve(&mut self, deadline: Option<Instant>) -> LpStatus {
        let mut bland = false;
        let mut stall = 0usize;
        let mut last_obj = self.objective();
        loop {
            if self.pivots % 32 == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return LpStatus::TimedOut;
                    }
                }
            }
            let Some(r) = self.leaving_row(bland) else {
                return LpStatus::Optimal;
            };
            let b = self.basis[r];
            let raise = self.value[b] < self.lower[b];
            let Some(k) = self.entering_slot(r, raise, bland) else {
                return LpStatus::Infeasible;
            };
            let target = if raise { self.lower[b] } else { self.upper[b] };
            self.pivot(r, k);
            self.value[b] = target;
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor();
            }
            self.recompute_basic_values();

            let obj = self.objective();
            if obj > last_obj + 1e-9 {
                stall = 0;
                last_obj = obj;
            } else {
                stall += 1;
                if stall >= STALL_BEFORE_BLAND {
                    bland = true;
                }
            }
        }
    }

    fn leaving_row(&self, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.rows {
            let b = self.basis[r];
            let x = self.value[b];
            let viol = if x < self.lower[b] - PRIMAL_TOL {
                self.lower[b] - x
            } else if x > self.upper[b] + PRIMAL_TOL {
                x - self.upper[b]
            } else {
                continue;
            };
            let better = match best {
                None => true,
                Some((br, bv)) => {
                    if bland {
                        b < self.basis[br]
                    } else {
                        viol > bv
                    }
                }
            };
            if better {
                best = Some((r, viol));
            }
        }
        best.map(|(r, _)| r)
    }

    fn entering_slot(&self, r: usize, raise: bool, bland: bool) -> Option<usize> {
        let n = self.structural;
        let row = &self.tab[r * n..(r + 1) * n];
        let mut best: Option<(usize, f64, f64)> = None;
        for (k, &alpha) in row.iter().enumerate() {
            let j = self.nonbasic[k];
            if self.lower[j] == self.upper[j] || alpha.abs() <= PIVOT_TOL {
                continue;
            }
            let at_lower = self.value[j] == self.lower[j];
            let eligible = if raise { at_lower == (alpha > 0.0) } else { at_lower == (alpha < 0.0) };
            if !eligible {
                continue;
            }
            let ratio = self.reduced[k].abs() / alpha.abs();
            let better = match best {
                None => true,
                Some((bk, br, ba)) => {
                    if ratio < br - ZERO_TOL {
                        true
                    } else if ratio <= br + ZERO_TOL {
                        if bland {
                            j < self.nonbasic[bk]
                        } else {
                            alpha.abs() > ba
                        }
                    } else {
                        false
                    }
                }
            };
            if better {
                best = Some((k, ratio, alpha.abs()));
            }
        }
        best.map(|(k, _, _)| k)
    }

    /// Exchanges the basic variable of row `r` with the nonbasic variable in
    /// slot `k`.
    fn pivot(&mut self, r: usize, k: usize) {
        let n = self.structural;
        let inv = 1.0 / self.tab[r * n + k];
        let mut prow: Vec<f64> = self.tab[r * n..(r + 1) * n].iter().map(|v| -v * inv).collect();
        prow[k] = inv;
        let nz: Vec<usize> = (0..n).filter(|&l| l != k && prow[l] != 0.0).collect();
        let update = |row: &mut [f64]| {
            let f = row[k];
            if f == 0.0 {
                return;
            }
            for &l in &nz {
                let v = row[l] + f * prow[l];
                row[l] = if v.abs() < ZERO_TOL { 0.0 } else { v };
            }
            row[k] = f * inv;
        };
        for i in 0..self.rows {
            if i != r {
                update(&mut self.tab[i * n..(i + 1) * n]);
            }
        }
        update(&mut self.reduced);
        self.tab[r * n..(r + 1) * n].copy_from_slice(&prow);

        let leaving = self.basis[r];
        let entering = self.nonbasic[k];
        self.basis[r] = entering;
        self.nonbasic[k] = leaving;
        self.row_of[leaving] = NONE;
        self.slot_of[leaving] = k;
        self.row_of[entering] = r;
        self.slot_of[entering] = NONE;
        self.since_refactor += 1;
        self.pivots += 1;
    }

    /// Rebuilds the tableau and reduced costs from the original rows for the
    /// current basis.
    fn refactor(&mut self) {
        let (m, n) = (self.rows, self.structural);
        let w = n + m;
        let mut full = vec![0.0; m * w];
        for (r, terms) in self.source.rows.iter().enumerate() {
            for &(j, a) in terms {
                full[r * w + j] = a;
            }
            full[r * w + n + r] = -1.0;
        }
        let mut used = vec![false; m];
        let mut new_basis = vec![0usize; m];
        for &col in &self.basis {
            let mut best: Option<(usize, f64)> = None;
            for i in 0..m {
                if used[i] {
                    continue;
                }
                let v = full[i * w + col].abs();
                if v > PIVOT_TOL && best.is_none_or(|(_, bv)| v > bv) {
                    best = Some((i, v));
                }
            }
            let (pr, _) = best.expect("basis matrix became singular");
            used[pr] = true;
            new_basis[pr] = col;
            let inv = 1.0 / full[pr * w + col];
            for v in &mut full[pr * w..(pr + 1) * w] {
                *v *= inv;
            }
            full[pr * w + col] = 1.0;
            let prow: Vec<f64> = full[pr * w..(pr + 1) * w].to_vec();
            let nz: Vec<usize> = (0..w).filter(|&l| prow[l] != 0.0).collect();
            for i in 0..m {
                if i == pr {
                    continue;
                }
                let f = full[i * w + col];
                if f == 0.0 {
                    continue;
                }
                for &l in &nz {
                    let v = full[i * w + l] - f * prow[l];
                    full[i * w + l] = if v.abs() < ZERO_TOL { 0.0 } else { v };
                }
                full[i * w + col] = 0.0;
            }
        }
        self.basis = new_basis;
        for (r, &b) in self.basis.iter().enumerate() {
            self.row_of[b] = r;
        }
        let cost = &self.source.cost;
        for (k, &j) in self.nonbasic.iter().enumerate() {
            let mut d = cost[j];
            for r in 0..m {
                let a = -full[r * w + j];
                self.tab[r * n + k] = a;
                d += cost[self.basis[r]] * a;
            }
            self.reduced[k] = d;
        }
        self.since_refactor = 0;
    }

    fn recompute_basic_values(&mut self) {
        let n = self.structural;
        let active: Vec<(usize, f64)> = self
            .nonbasic
            .iter()
            .enumerate()
            .filter(|&(_, &j)| self.value[j] != 0.0)
            .map(|(k, &j)| (k, self.value[j]))
            .collect();
        for r in 0..self.rows {
            let row = &self.tab[r * n..(r + 1) * n];
            let s: f64 = active.iter().map(|&(k, x)| row[k] * x).sum();
            self.value[self.basis[r]] = s;
        }
    }
}
