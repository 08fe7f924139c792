//! Integer linear programs with integral data.
//!
//! Models are built by the PD routines, solved exactly by [`solve`], and can
//! be handed to external solvers through [`export_lp`].

mod lp;
mod solve;

pub use lp::{export_lp, parse_lp};
pub use solve::solve;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: i64,
    pub upper: i64,
}

impl Variable {
    pub fn is_binary(&self) -> bool {
        self.lower == 0 && self.upper == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }

    fn holds(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// `Σ coef·var  rel  rhs`, with terms as `(variable index, coefficient)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    fn activity(&self, values: &[i64]) -> i128 {
        self.terms
            .iter()
            .map(|&(v, a)| a as i128 * values[v] as i128)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub sense: Sense,
    pub terms: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IlpModel {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Option<Objective>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.starts_with(|c: char| c.is_ascii_digit())
}

impl IlpModel {
    pub fn new() -> Self {
        IlpModel::default()
    }

    /// Adds an integer variable with bounds `[lower, upper]`; returns its index.
    pub fn add_variable(&mut self, name: impl Into<String>, lower: i64, upper: i64) -> Result<usize> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(Error::invalid(format!(
                "variable name {name:?} must match [A-Za-z_][A-Za-z0-9_]*"
            )));
        }
        if lower > upper {
            return Err(Error::invalid(format!(
                "variable {name} has empty bounds [{lower}, {upper}]"
            )));
        }
        if self.variables.iter().any(|v| v.name == name) {
            return Err(Error::invalid(format!("duplicate variable name {name}")));
        }
        self.variables.push(Variable { name, lower, upper });
        Ok(self.variables.len() - 1)
    }

    fn check_terms(&self, terms: &[(usize, i64)]) -> Result<Vec<(usize, i64)>> {
        // Merge repeated variables and drop zero coefficients.
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for &(v, a) in terms {
            if v >= self.variables.len() {
                return Err(Error::invalid(format!("constraint references unknown variable {v}")));
            }
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, b)) => *b += a,
                None => merged.push((v, a)),
            }
        }
        merged.retain(|&(_, a)| a != 0);
        merged.sort_unstable_by_key(|&(v, _)| v);
        Ok(merged)
    }

    pub fn add_constraint(&mut self, terms: &[(usize, i64)], relation: Relation, rhs: i64) -> Result<()> {
        let terms = self.check_terms(terms)?;
        self.constraints.push(Constraint { terms, relation, rhs });
        Ok(())
    }

    pub fn set_objective(&mut self, sense: Sense, terms: &[(usize, i64)]) -> Result<()> {
        let terms = self.check_terms(terms)?;
        self.objective = Some(Objective { sense, terms });
        Ok(())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }
}

/// One integer value per model variable, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<i64>,
}

impl Assignment {
    pub fn value(&self, var: usize) -> i64 {
        self.values[var]
    }
}

/// Checks every bound and constraint in exact integer arithmetic.
pub fn validate(model: &IlpModel, assignment: &Assignment) -> Result<bool> {
    if assignment.values.len() != model.variables.len() {
        return Err(Error::DimensionMismatch(format!(
            "assignment has {} values for {} variables",
            assignment.values.len(),
            model.variables.len()
        )));
    }
    let in_bounds = model
        .variables
        .iter()
        .zip(&assignment.values)
        .all(|(v, &x)| v.lower <= x && x <= v.upper);
    Ok(in_bounds
        && model
            .constraints
            .iter()
            .all(|c| c.relation.holds(c.activity(&assignment.values), c.rhs as i128)))
}
