//! Rational linear programs and an exact simplex solver.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::rational::Rational;

mod simplex;

pub use simplex::solve_lp;

/// Handle to a variable of a [`LinearProgram`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// A decision variable; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `optimize Σ c_j x_j` subject to linear constraints and variable bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub variables: Vec<Variable>,
    pub objective: Vec<(VarId, Rational)>,
    pub constraints: Vec<Constraint>,
}

/// An optimal assignment and its objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub values: Vec<Rational>,
}

impl LpSolution {
    pub fn value_of(&self, var: VarId) -> &Rational {
        &self.values[var.0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

fn linear_sum(terms: &[(VarId, Rational)], values: &[Rational]) -> Rational {
    terms.iter().map(|(v, c)| c * &values[v.0]).sum()
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            variables: Vec::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> VarId {
        self.variables.push(Variable {
            name: name.into(),
            lower,
            upper,
        });
        VarId(self.variables.len() - 1)
    }

    /// Adds `coefficient · var` to the objective.
    pub fn add_objective_term(&mut self, var: VarId, coefficient: Rational) {
        self.objective.push((var, coefficient));
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint {
            name: name.into(),
            terms,
            relation,
            rhs,
        });
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Rejects references to undeclared variables and crossed bounds.
    pub fn check_well_formed(&self) -> Result<()> {
        let n = self.variables.len();
        for v in &self.variables {
            if let (Some(l), Some(u)) = (&v.lower, &v.upper) {
                if l > u {
                    return Err(Error::MalformedLp(format!(
                        "variable `{}` has lower bound {l} above upper bound {u}",
                        v.name
                    )));
                }
            }
        }
        let bad = |terms: &[(VarId, Rational)]| terms.iter().find(|(v, _)| v.0 >= n).map(|(v, _)| v.0);
        if let Some(v) = bad(&self.objective) {
            return Err(Error::MalformedLp(format!("objective references undeclared variable #{v}")));
        }
        for c in &self.constraints {
            if let Some(v) = bad(&c.terms) {
                return Err(Error::MalformedLp(format!(
                    "constraint `{}` references undeclared variable #{v}",
                    c.name
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, values: &[Rational]) -> Rational {
        linear_sum(&self.objective, values)
    }

    /// Name of the first violated bound or constraint, if any.
    pub fn first_violation(&self, values: &[Rational]) -> Option<String> {
        if values.len() != self.variables.len() {
            return Some(String::from("assignment length mismatch"));
        }
        for (v, x) in self.variables.iter().zip(values) {
            if v.lower.as_ref().is_some_and(|l| x < l) || v.upper.as_ref().is_some_and(|u| x > u) {
                return Some(format!("bound of `{}`", v.name));
            }
        }
        self.constraints
            .iter()
            .find(|c| !c.relation.holds(&linear_sum(&c.terms, values), &c.rhs))
            .map(|c| format!("constraint `{}`", c.name))
    }

    /// Human-readable dump in the common LP text layout, for diffing.
    pub fn to_lp_text(&self) -> String {
        let mut out = String::new();
        let write_terms = |out: &mut String, terms: &[(VarId, Rational)]| {
            if terms.is_empty() {
                out.push_str(" 0");
            }
            for (i, (v, c)) in terms.iter().enumerate() {
                let name = &self.variables[v.0].name;
                let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
                if i > 0 || sign == "-" {
                    let _ = write!(out, " {sign}");
                }
                if mag == Rational::one() {
                    let _ = write!(out, " {name}");
                } else {
                    let _ = write!(out, " {mag} {name}");
                }
            }
        };
        out.push_str(match self.sense {
            Sense::Maximize => "Maximize\n obj:",
            Sense::Minimize => "Minimize\n obj:",
        });
        write_terms(&mut out, &self.objective);
        out.push_str("\nSubject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let name = if c.name.is_empty() { format!("c{}", i + 1) } else { c.name.clone() };
            let _ = write!(out, " {name}:");
            write_terms(&mut out, &c.terms);
            let _ = writeln!(out, " {} {}", c.relation.symbol(), c.rhs);
        }
        out.push_str("Bounds\n");
        for v in &self.variables {
            match (&v.lower, &v.upper) {
                (Some(l), Some(u)) => writeln!(out, " {l} <= {} <= {u}", v.name),
                (Some(l), None) => writeln!(out, " {} >= {l}", v.name),
                (None, Some(u)) => writeln!(out, " -inf <= {} <= {u}", v.name),
                (None, None) => writeln!(out, " {} free", v.name),
            }
            .ok();
        }
        out.push_str("End\n");
        out
    }
}
