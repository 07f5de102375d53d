use std::collections::HashMap;
use std::fmt;

use crate::error::ModelError;

/// Largest absolute coefficient or right-hand side accepted by a model.
pub const COEFFICIENT_LIMIT: i64 = 1 << 31;

/// Index of a declared variable inside one [`LinearModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub(crate) usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// 0-1 variable.
    Binary,
    /// Real variable bounded below by zero.
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub objective: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }

    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Ge => lhs >= rhs,
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

/// Tag shared by constraints that are added and retracted together.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group(String);

impl Group {
    pub fn new(tag: impl Into<String>) -> Self {
        Group(tag.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A linear constraint `sum(coef * var) <sense> rhs`.
///
/// Terms are merged and sorted by variable index when the constraint is
/// added to a model; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: Option<String>,
    pub terms: Vec<(VarId, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn new(terms: Vec<(VarId, i64)>, sense: Sense, rhs: i64) -> Self {
        Constraint { name: None, terms, sense, rhs }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn lhs(&self, assignment: &[i64]) -> i64 {
        self.terms.iter().map(|&(v, c)| c * assignment[v.0]).sum()
    }

    pub fn is_satisfied(&self, assignment: &[i64]) -> bool {
        self.sense.holds(self.lhs(assignment), self.rhs)
    }

    fn normalize(&mut self) {
        self.terms.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, i64)> = Vec::with_capacity(self.terms.len());
        for &(v, c) in &self.terms {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        self.terms = merged;
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub(crate) constraint: Constraint,
    pub(crate) group: Group,
}

/// A minimization model over binary (and, for export only, continuous)
/// variables with integer coefficients.
#[derive(Debug, Clone, Default)]
pub struct LinearModel {
    vars: Vec<Variable>,
    by_name: HashMap<String, VarId>,
    rows: Vec<Row>,
    /// Last optimum found by `solve`, re-checked as a warm start.
    pub(crate) hint: Option<Vec<i64>>,
}

impl LinearModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_binary(&mut self, name: impl Into<String>, objective: i64) -> Result<VarId, ModelError> {
        self.add_var(name.into(), VarKind::Binary, objective)
    }

    pub fn add_continuous(&mut self, name: impl Into<String>, objective: i64) -> Result<VarId, ModelError> {
        self.add_var(name.into(), VarKind::Continuous, objective)
    }

    fn add_var(&mut self, name: String, kind: VarKind, objective: i64) -> Result<VarId, ModelError> {
        if self.by_name.contains_key(&name) {
            return Err(ModelError::DuplicateVariable(name));
        }
        if objective.abs() > COEFFICIENT_LIMIT {
            return Err(ModelError::CoefficientOverflow(objective));
        }
        let id = VarId(self.vars.len());
        self.by_name.insert(name.clone(), id);
        self.vars.push(Variable { name, kind, objective });
        self.hint = None;
        Ok(id)
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn variable(&self, id: VarId) -> &Variable {
        &self.vars[id.0]
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn has_continuous(&self) -> bool {
        self.vars.iter().any(|v| v.kind == VarKind::Continuous)
    }

    pub fn constraint_count(&self) -> usize {
        self.rows.len()
    }

    pub fn group_size(&self, group: &Group) -> usize {
        self.rows.iter().filter(|r| &r.group == group).count()
    }

    pub fn constraints(&self) -> impl Iterator<Item = (&Constraint, &Group)> {
        self.rows.iter().map(|r| (&r.constraint, &r.group))
    }

    /// Appends `constraints` under `group`. Either all of them are added or
    /// none is.
    pub fn add_constraints(
        &mut self,
        constraints: impl IntoIterator<Item = Constraint>,
        group: &Group,
    ) -> Result<(), ModelError> {
        let mut staged = Vec::new();
        for mut c in constraints {
            for &(v, coef) in &c.terms {
                if v.0 >= self.vars.len() {
                    return Err(ModelError::UnknownVariable(format!("#{}", v.0)));
                }
                if coef.abs() > COEFFICIENT_LIMIT {
                    return Err(ModelError::CoefficientOverflow(coef));
                }
            }
            if c.rhs.abs() > COEFFICIENT_LIMIT {
                return Err(ModelError::CoefficientOverflow(c.rhs));
            }
            c.normalize();
            staged.push(Row { constraint: c, group: group.clone() });
        }
        self.rows.extend(staged);
        Ok(())
    }

    /// Name-based variant of [`add_constraints`](Self::add_constraints).
    pub fn add_constraint_by_name(
        &mut self,
        terms: &[(&str, i64)],
        sense: Sense,
        rhs: i64,
        group: &Group,
    ) -> Result<(), ModelError> {
        let resolved = terms
            .iter()
            .map(|&(name, coef)| {
                self.var_id(name)
                    .map(|id| (id, coef))
                    .ok_or_else(|| ModelError::UnknownVariable(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.add_constraints([Constraint::new(resolved, sense, rhs)], group)
    }

    /// Removes every constraint tagged with `group`; returns how many were removed.
    pub fn retract_group(&mut self, group: &Group) -> usize {
        let before = self.rows.len();
        self.rows.retain(|r| &r.group != group);
        before - self.rows.len()
    }

    pub fn objective_value(&self, assignment: &[i64]) -> i64 {
        self.vars.iter().zip(assignment).map(|(v, &x)| v.objective * x).sum()
    }

    /// True when `assignment` respects variable domains and every constraint.
    pub fn is_satisfied(&self, assignment: &[i64]) -> bool {
        assignment.len() == self.vars.len()
            && self.vars.iter().zip(assignment).all(|(v, &x)| match v.kind {
                VarKind::Binary => x == 0 || x == 1,
                VarKind::Continuous => x >= 0,
            })
            && self.rows.iter().all(|r| r.constraint.is_satisfied(assignment))
    }

    pub(crate) fn rows(&self) -> &[Row] {
        &self.rows
    }
}
