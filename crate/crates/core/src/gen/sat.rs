//! Networks encoding 3-CNF satisfiability as non-preemptive connectivity.

use alloc::format;
use alloc::string::{String, ToString};

use super::cnf::{CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceBuilder, Preemption};
use crate::rational::Rational;

/// Writes one satisfiability gadget between `entry` and `exit`.
///
/// Terminal connectivity inside the gadget is only possible during the unit
/// slot starting at `var_slot` (along a *variable path* choosing, for every
/// variable, the chain of one of its two literals) and during the slot
/// starting at `clause_slot` (along a *clause path* using, for every clause,
/// a literal chain the variable path left free). Both slots are connected in
/// one schedule iff the formula is satisfiable.
///
/// Three job shapes appear:
/// * choice jobs on chain edges, window `[min, max + 1]`, length `|a - b|`,
///   which are free in exactly one of the two slots;
/// * unit jobs tight on the clause slot, used only by variable paths;
/// * unit jobs tight on the variable slot, used only by clause paths.
///
/// A three-edge blocking path from `entry` blocks every other time.
struct Gadget<'a> {
    formula: &'a CnfFormula,
    prefix: String,
    var_slot: i64,
    clause_slot: i64,
    horizon: i64,
}

impl Gadget<'_> {
    fn node(&self, name: &str) -> String {
        format!("{}{name}", self.prefix)
    }

    fn job(&self, b: &mut InstanceBuilder, id: &str, u: &str, v: &str, (r, d, p): (i64, i64, i64)) {
        let int = Rational::from_integer;
        b.named_edge(
            self.node(id),
            self.node(u),
            self.node(v),
            int(r),
            int(d),
            int(p),
            Preemption::None,
        );
    }

    fn choice(&self) -> (i64, i64, i64) {
        let (lo, hi) = (self.var_slot.min(self.clause_slot), self.var_slot.max(self.clause_slot));
        (lo, hi + 1, hi - lo)
    }

    fn variable_only(&self) -> (i64, i64, i64) {
        (self.clause_slot, self.clause_slot + 1, 1)
    }

    fn clause_only(&self) -> (i64, i64, i64) {
        (self.var_slot, self.var_slot + 1, 1)
    }

    fn build(&self, b: &mut InstanceBuilder, entry: &str, exit: &str) {
        let f = self.formula;
        let (t1, t2) = (self.var_slot.min(self.clause_slot), self.var_slot.max(self.clause_slot));
        self.job(b, "block1", entry, "p1", (0, t1, t1));
        self.job(b, "block2", "p1", "p2", (t1 + 1, t2, t2 - t1 - 1));
        self.job(b, "block3", "p2", "s'", (t2 + 1, self.horizon, self.horizon - t2 - 1));

        let n = f.num_vars();
        let m = f.clauses().len();
        let var = |i: usize| format!("v{i}");
        let clause = |r: usize| format!("c{r}");
        self.job(b, "var-in", "s'", &var(1), self.variable_only());
        self.job(b, "var-out", &var(n + 1), exit, self.variable_only());
        self.job(b, "clause-in", "s'", &clause(1), self.clause_only());
        self.job(b, "clause-out", &clause(m + 1), exit, self.clause_only());

        for i in 1..=n {
            let mut bypass = false;
            for (lit, chain) in [(Literal::pos(i), 'y'), (Literal::neg(i), 'z')] {
                let sign = if lit.negated { '-' } else { '+' };
                let occurrences = f.occurrences(lit);
                let len = 2 * occurrences.len();
                if len == 0 {
                    bypass = true;
                    continue;
                }
                let link = |q: usize| format!("{chain}{i}^{q}");
                self.job(b, &format!("x{i}{sign}in"), &var(i), &link(1), self.variable_only());
                for q in 1..len {
                    let shape = if q % 2 == 1 { self.choice() } else { self.variable_only() };
                    self.job(b, &format!("x{i}{sign}{q}"), &link(q), &link(q + 1), shape);
                }
                self.job(b, &format!("x{i}{sign}out"), &link(len), &var(i + 1), self.variable_only());
                for (q, &r) in occurrences.iter().enumerate() {
                    let q = q + 1;
                    self.job(b, &format!("C{r}{sign}x{i}in"), &clause(r), &link(2 * q - 1), self.clause_only());
                    self.job(b, &format!("C{r}{sign}x{i}out"), &link(2 * q), &clause(r + 1), self.clause_only());
                }
            }
            if bypass {
                self.job(b, &format!("x{i}bypass"), &var(i), &var(i + 1), self.variable_only());
            }
        }
    }
}

/// The satisfiability gadget with clause slot `[t1, t1 + 1]`, variable slot
/// `[t2, t2 + 1]` and horizon `T`.
///
/// The maximum connectivity time is 2 if the formula is satisfiable and 1
/// otherwise; with `t1 = 0, t2 = 1, T = 2` the minimum disconnected time is
/// 0 versus 1. All jobs are non-preemptable.
pub fn gen_3sat_gadget(formula: &CnfFormula, t1: i64, t2: i64, horizon: i64) -> Result<Instance> {
    if t1 < 0 || t1 + 1 > t2 || horizon < t2 + 1 {
        return Err(Error::Generator(format!(
            "need 0 ≤ t1, t1 + 1 ≤ t2 and t2 + 1 ≤ T, got t1 = {t1}, t2 = {t2}, T = {horizon}"
        )));
    }
    let gadget = Gadget {
        formula,
        prefix: String::new(),
        var_slot: t2,
        clause_slot: t1,
        horizon,
    };
    let mut b = InstanceBuilder::new();
    gadget.build(&mut b, "s+", "s-");
    b.horizon(Rational::from_integer(horizon))
        .meta("family", "sat-gadget")
        .meta("formula", formula.to_string())
        .meta("t1", t1.to_string())
        .meta("t2", t2.to_string());
    Ok(b.build("s+", "s-"))
}

/// Prefix of the nodes and edges of gate `(i, j)` in [`gen_3sat_grid`].
pub fn grid_gate_prefix(i: usize, j: usize) -> String {
    format!("g{i},{j}:")
}

/// `n² - n` gadgets ("gates"), one per ordered pair `(i, j)` of distinct
/// slots in `0..n`, wired so that connectivity during `k` distinct unit slots
/// requires every gate on a route of two such labels to be satisfied.
///
/// Gate `(i, j)` has variable slot `i` and clause slot `j`. Routes are built
/// from *connectors labelled `k`*: two-edge paths with tight jobs on `[0, k]`
/// and `[k + 1, n]`, so they are usable only during `[k, k + 1]`. The route
/// for label `k` runs from `s+` through gates `(0, k), …, (k - 1, k)`, then
/// `(k, j)` for every `j ≠ k`, then `(k + 1, k), …, (n - 1, k)`, and on to `s-`.
///
/// The horizon is `n`; the maximum connectivity time is `n` if the formula is
/// satisfiable and 1 otherwise.
pub fn gen_3sat_grid(formula: &CnfFormula) -> Result<Instance> {
    let n = formula.num_vars();
    if n < 2 {
        return Err(Error::Generator(format!("the grid needs at least two variables, got {n}")));
    }
    let horizon = n as i64;
    let mut b = InstanceBuilder::new();
    b.node("s+");
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let prefix = grid_gate_prefix(i, j);
            let gadget = Gadget {
                formula,
                prefix: prefix.clone(),
                var_slot: i as i64,
                clause_slot: j as i64,
                horizon,
            };
            gadget.build(&mut b, "s+", "s-");
        }
    }
    let int = Rational::from_integer;
    for k in 0..n {
        let mut stops = alloc::vec![String::from("s+")];
        let gates = (0..k)
            .map(|i| (i, k))
            .chain((0..n).filter(|&j| j != k).map(|j| (k, j)))
            .chain((k + 1..n).map(|i| (i, k)));
        for (i, j) in gates {
            let prefix = grid_gate_prefix(i, j);
            stops.push(format!("{prefix}s+"));
            stops.push(format!("{prefix}s-"));
        }
        stops.push(String::from("s-"));
        for (hop, pair) in stops.chunks(2).enumerate() {
            let mid = format!("L{k}.{hop}");
            let k = k as i64;
            b.named_edge(format!("{mid}a"), &pair[0], &mid, int(0), int(k), int(k), Preemption::None);
            b.named_edge(
                format!("{mid}b"),
                &mid,
                &pair[1],
                int(k + 1),
                int(horizon),
                int(horizon - k - 1),
                Preemption::None,
            );
        }
    }
    b.horizon(int(horizon))
        .meta("family", "sat-grid")
        .meta("formula", formula.to_string());
    Ok(b.build("s+", "s-"))
}

#[cfg(test)]
mod tests;
