//! 3-CNF formulas with exactly three distinct variables per clause.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A variable (1-based) or its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// `+v` or `-v` in DIMACS notation.
    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::Generator(String::from("literal 0 is not a variable")));
        }
        Ok(Literal {
            var: v.unsigned_abs() as usize,
            negated: v < 0,
        })
    }

    pub fn to_signed(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    /// Truth value under `assignment[var - 1]`.
    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// Clauses over variables `1..=num_vars`, each on exactly three distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            for (a, lit) in clause.iter().enumerate() {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(Error::Generator(format!(
                        "clause {} uses variable {} outside 1..={num_vars}",
                        j + 1,
                        lit.var
                    )));
                }
                if clause[..a].iter().any(|other| other.var == lit.var) {
                    return Err(Error::Generator(format!(
                        "clause {} repeats variable {}",
                        j + 1,
                        lit.var
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from signed DIMACS literals.
    pub fn from_signed(num_vars: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                Ok([
                    Literal::from_signed(c[0])?,
                    Literal::from_signed(c[1])?,
                    Literal::from_signed(c[2])?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// 1-based indices of the clauses containing `lit`, in order.
    pub fn occurrences(&self, lit: Literal) -> Vec<usize> {
        (0..self.clauses.len())
            .filter(|&j| self.clauses[j].contains(&lit))
            .map(|j| j + 1)
            .collect()
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|lit| lit.holds(assignment)))
    }

    /// A satisfying assignment, found by trying all `2^n` assignments.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 32, "exhaustive satisfiability check needs fewer than 32 variables");
        let mut assignment = vec![false; self.num_vars];
        for bits in 0u64..1 << self.num_vars {
            for (i, a) in assignment.iter_mut().enumerate() {
                *a = bits >> i & 1 == 1;
            }
            if self.is_satisfied_by(&assignment) {
                return Some(assignment);
            }
        }
        None
    }

    pub fn is_satisfiable(&self) -> bool {
        self.satisfying_assignment().is_some()
    }

    /// Parses DIMACS CNF text (`p cnf <vars> <clauses>` header, clauses
    /// terminated by `0`, `c` comment lines).
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut num_vars = None;
        let mut declared_clauses = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i64> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                match fields.as_slice() {
                    ["cnf", v, c] => {
                        num_vars = Some(parse_count(v)?);
                        declared_clauses = Some(parse_count(c)?);
                    }
                    _ => return Err(Error::Generator(format!("malformed header `{line}`"))),
                }
                continue;
            }
            if num_vars.is_none() {
                return Err(Error::Generator(String::from("clause before `p cnf` header")));
            }
            for token in line.split_whitespace() {
                let v: i64 = token
                    .parse()
                    .map_err(|_| Error::Generator(format!("bad literal `{token}`")))?;
                if v == 0 {
                    let clause: [i64; 3] = current.as_slice().try_into().map_err(|_| {
                        Error::Generator(format!(
                            "clause {} has {} literals, expected 3",
                            clauses.len() + 1,
                            current.len()
                        ))
                    })?;
                    clauses.push(clause);
                    current.clear();
                } else {
                    current.push(v);
                }
            }
        }
        if !current.is_empty() {
            return Err(Error::Generator(String::from("last clause is not terminated by 0")));
        }
        let num_vars = num_vars.ok_or_else(|| Error::Generator(String::from("missing `p cnf` header")))?;
        if declared_clauses != Some(clauses.len()) {
            return Err(Error::Generator(format!(
                "header declares {} clauses, found {}",
                declared_clauses.unwrap_or(0),
                clauses.len()
            )));
        }
        Self::from_signed(num_vars, &clauses)
    }

    /// DIMACS CNF text.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!(
                "{} {} {} 0\n",
                c[0].to_signed(),
                c[1].to_signed(),
                c[2].to_signed()
            ));
        }
        out
    }
}

fn parse_count(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Generator(format!("bad count `{s}` in header")))
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "({} ∨ {} ∨ {})", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All eight sign patterns over three variables.
    fn all_patterns() -> CnfFormula {
        let mut clauses = Vec::new();
        for bits in 0..8 {
            clauses.push([
                if bits & 1 == 0 { 1 } else { -1 },
                if bits & 2 == 0 { 2 } else { -2 },
                if bits & 4 == 0 { 3 } else { -3 },
            ]);
        }
        CnfFormula::from_signed(3, &clauses).unwrap()
    }

    #[test]
    fn satisfiability() {
        let f = CnfFormula::from_signed(3, &[[1, 2, 3]]).unwrap();
        assert!(f.is_satisfiable());
        assert!(!all_patterns().is_satisfiable());
        let a = CnfFormula::from_signed(4, &[[1, -2, 3], [-1, 2, 4], [-3, -4, 2]])
            .unwrap()
            .satisfying_assignment()
            .unwrap();
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn rejects_malformed_clauses() {
        assert!(CnfFormula::from_signed(3, &[[1, -1, 2]]).is_err());
        assert!(CnfFormula::from_signed(2, &[[1, 2, 3]]).is_err());
        assert!(CnfFormula::from_signed(3, &[[0, 1, 2]]).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let f = all_patterns();
        let text = f.to_dimacs();
        assert_eq!(CnfFormula::parse_dimacs(&text).unwrap(), f);
        let commented = "c example\np cnf 3 2\n1 -2\n3 0 -1 2 3 0\n";
        let g = CnfFormula::parse_dimacs(commented).unwrap();
        assert_eq!(g.clauses().len(), 2);
        assert_eq!(g.occurrences(Literal::neg(1)), [2]);
    }

    #[test]
    fn dimacs_errors() {
        assert!(CnfFormula::parse_dimacs("1 2 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 3 1\n1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 3 1\n1 2 3\n").is_err());
    }
}
