//! Disjoint `s+`–`s-` paths encoding 3-CNF satisfiability.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::cnf::{CnfFormula, Literal};
use crate::error::Result;
use crate::instance::{Instance, InstanceBuilder, Preemption};
use crate::rational::Rational;

/// Name of the path for a literal: `x3` or `~x3`.
pub fn literal_path(lit: Literal) -> String {
    if lit.negated {
        format!("~x{}", lit.var)
    } else {
        format!("x{}", lit.var)
    }
}

/// Id of the variable job on the path of `lit`.
pub fn variable_job(lit: Literal) -> String {
    format!("{}:var", literal_path(lit))
}

/// Number of variables after padding with unused ones up to the clause count.
pub fn padded_variables(formula: &CnfFormula) -> usize {
    formula.num_vars().max(formula.clauses().len())
}

/// `2n` disjoint paths, one per literal, with horizon `T = 8n`, on which the
/// terminals can stay connected throughout iff the formula is satisfiable.
///
/// Each path carries a variable job (window `[0, T]`, length `3n`) and unit
/// blocking jobs, all non-preemptable:
/// * at `3n + 2(i-1)` on every path except `x_i`, and one unit later on every
///   path except `¬x_i`, so no variable job can cover `[3n, 5n)`;
/// * at `2n + (i-1)` on every path except `x_i` and `¬x_i`, so at most one
///   literal of each variable covers `[2n, 3n)` ("is true");
/// * at `5n + (j-1)` on every path except those of the literals of clause `j`,
///   so some literal of each clause stays free during `[5n, 6n)`.
///
/// If there are more clauses than variables, unused variables are added until
/// `n = m`; the count is recorded under the `padding` metadata key.
pub fn gen_disjoint_paths(formula: &CnfFormula) -> Result<Instance> {
    let n = padded_variables(formula);
    let ni = n as i64;
    let horizon = 8 * ni;
    let literals: Vec<Literal> = (1..=n).flat_map(|i| [Literal::pos(i), Literal::neg(i)]).collect();
    let mut jobs: BTreeMap<Literal, Vec<(String, i64)>> = BTreeMap::new();
    for i in 1..=n {
        let t = 3 * ni + 2 * (i as i64 - 1);
        let t2 = 2 * ni + (i as i64 - 1);
        for &lit in &literals {
            let list = jobs.entry(lit).or_default();
            if lit != Literal::pos(i) {
                list.push((format!("t{i}"), t));
            }
            if lit != Literal::neg(i) {
                list.push((format!("t{i}'"), t + 1));
            }
            if lit.var != i {
                list.push((format!("t{i}''"), t2));
            }
        }
    }
    for (j, clause) in formula.clauses().iter().enumerate() {
        for &lit in &literals {
            if !clause.contains(&lit) {
                jobs.entry(lit).or_default().push((format!("C{}", j + 1), 5 * ni + j as i64));
            }
        }
    }
    let int = Rational::from_integer;
    let mut b = InstanceBuilder::new();
    b.node("s+");
    for &lit in &literals {
        let path = literal_path(lit);
        let mut blockers = jobs.remove(&lit).unwrap_or_default();
        blockers.sort_by_key(|&(_, t)| t);
        let len = blockers.len() + 1;
        let node = |k: usize| match k {
            0 => String::from("s+"),
            k if k == len => String::from("s-"),
            k => format!("{path}.{k}"),
        };
        b.named_edge(variable_job(lit), node(0), node(1), int(0), int(horizon), int(3 * ni), Preemption::None);
        for (k, (name, t)) in blockers.into_iter().enumerate() {
            b.named_edge(
                format!("{path}:{name}"),
                node(k + 1),
                node(k + 2),
                int(t),
                int(t + 1),
                int(1),
                Preemption::None,
            );
        }
    }
    b.horizon(int(horizon))
        .meta("family", "disjoint-paths")
        .meta("formula", formula.to_string())
        .meta("padding", (n - formula.num_vars()).to_string());
    Ok(b.build("s+", "s-"))
}

/// Start times `{0, 5n}` for every variable job: a variable job either covers
/// `[0, 3n)` (its literal is true) or `[5n, 8n)` (false).
///
/// Any schedule that never disconnects the terminals can be shifted into this
/// form without creating disconnection, so a search restricted to these
/// starts decides whether disconnected time 0 is attainable.
pub fn disjoint_paths_binary_starts(formula: &CnfFormula) -> BTreeMap<String, Vec<Rational>> {
    let n = padded_variables(formula) as i64;
    (1..=padded_variables(formula))
        .flat_map(|i| [Literal::pos(i), Literal::neg(i)])
        .map(|lit| (variable_job(lit), vec![Rational::zero(), Rational::from_integer(5 * n)]))
        .collect()
}
