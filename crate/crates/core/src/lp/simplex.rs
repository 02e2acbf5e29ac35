//! Two-phase primal simplex over exact rationals with implicit variable bounds.
//!
//! Every variable is shifted or reflected so that it ranges over `[0, u]` with
//! `u` possibly infinite; free variables are split. Nonbasic columns sit at
//! either bound. Entering and leaving choices follow the smallest-index rule,
//! which rules out cycling on degenerate programs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{LinearProgram, LpOutcome, LpSolution, Relation, Sense};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// How an original variable is recovered from tableau columns.
enum VarMap {
    /// `x = lower + col`
    Shift { col: usize, lower: Rational },
    /// `x = upper - col`
    Mirror { col: usize, upper: Rational },
    /// `x = pos - neg`
    Free { pos: usize, neg: usize },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColState {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau {
    /// `rows[i][j]`: coefficient of column `j` in row `i` of `B⁻¹A`.
    rows: Vec<Vec<Rational>>,
    /// Current value of the basic variable of each row.
    values: Vec<Rational>,
    basis: Vec<usize>,
    state: Vec<ColState>,
    upper: Vec<Option<Rational>>,
    /// Columns that may never enter the basis.
    banned: Vec<bool>,
    /// Reduced costs of the current phase, in maximization form.
    cost: Vec<Rational>,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.state.len()
    }

    fn set_costs(&mut self, c: &[Rational]) {
        let n = self.ncols();
        let mut cost: Vec<Rational> = c.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    cost[j] -= cb * a;
                }
            }
        }
        for j in 0..n {
            if self.state[j] == ColState::Basic {
                cost[j] = Rational::zero();
            }
        }
        self.cost = cost;
    }

    fn entering(&self) -> Option<usize> {
        (0..self.ncols()).find(|&j| {
            if self.banned[j] {
                return false;
            }
            let d = &self.cost[j];
            match self.state[j] {
                ColState::Basic => false,
                ColState::AtLower => {
                    d.is_positive() && !self.upper[j].as_ref().is_some_and(Rational::is_zero)
                }
                ColState::AtUpper => d.is_negative(),
            }
        })
    }

    fn step(&mut self) -> Step {
        let Some(q) = self.entering() else {
            return Step::Optimal;
        };
        let increasing = self.state[q] == ColState::AtLower;
        // (theta, tie-break index, leaving row or None for a bound flip, leaves at upper)
        let mut best: Option<(Rational, usize, Option<usize>, bool)> = None;
        let mut consider = |cand: (Rational, usize, Option<usize>, bool)| {
            let better = match &best {
                None => true,
                Some(b) => cand.0 < b.0 || (cand.0 == b.0 && cand.1 < b.1),
            };
            if better {
                best = Some(cand);
            }
        };
        if let Some(u) = &self.upper[q] {
            consider((u.clone(), q, None, false));
        }
        for i in 0..self.rows.len() {
            let alpha = &self.rows[i][q];
            if alpha.is_zero() {
                continue;
            }
            // Rate at which the basic variable decreases per unit step.
            let rate = if increasing { alpha.clone() } else { -alpha };
            let b = self.basis[i];
            if rate.is_positive() {
                consider((&self.values[i] / &rate, b, Some(i), false));
            } else if let Some(ub) = &self.upper[b] {
                consider(((ub - &self.values[i]) / -rate, b, Some(i), true));
            }
        }
        let Some((theta, _, row, to_upper)) = best else {
            return Step::Unbounded;
        };
        let delta = if increasing { theta.clone() } else { -&theta };
        if !delta.is_zero() {
            for i in 0..self.rows.len() {
                let alpha = &self.rows[i][q];
                if !alpha.is_zero() {
                    let change = alpha * &delta;
                    self.values[i] -= change;
                }
            }
        }
        match row {
            None => {
                self.state[q] = if increasing { ColState::AtUpper } else { ColState::AtLower };
            }
            Some(r) => {
                let leaving = self.basis[r];
                self.state[leaving] = if to_upper { ColState::AtUpper } else { ColState::AtLower };
                let start = if increasing {
                    Rational::zero()
                } else {
                    self.upper[q].clone().expect("column at upper bound has a finite bound")
                };
                self.values[r] = start + delta;
                self.basis[r] = q;
                self.state[q] = ColState::Basic;
                self.pivot(r, q);
            }
        }
        Step::Moved
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let piv = self.rows[r][q].clone();
        if piv != Rational::one() {
            let inv = piv.recip();
            for a in self.rows[r].iter_mut() {
                if !a.is_zero() {
                    *a *= &inv;
                }
            }
        }
        let pivot_row: Vec<(usize, Rational)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, a.clone()))
            .collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            let row = &mut self.rows[i];
            for (j, a) in &pivot_row {
                row[*j] -= &f * a;
            }
        }
        if !self.cost[q].is_zero() {
            let f = self.cost[q].clone();
            for (j, a) in &pivot_row {
                self.cost[*j] -= &f * a;
            }
        }
    }

    fn run(&mut self) -> Step {
        loop {
            match self.step() {
                Step::Moved => continue,
                other => return other,
            }
        }
    }

    fn column_value(&self, j: usize) -> Rational {
        match self.state[j] {
            ColState::AtLower => Rational::zero(),
            ColState::AtUpper => self.upper[j].clone().expect("finite upper bound"),
            ColState::Basic => {
                let i = self.basis.iter().position(|&b| b == j).expect("basic column in basis");
                self.values[i].clone()
            }
        }
    }
}

/// Solves `lp` exactly.
///
/// Infeasibility and unboundedness are reported as outcomes; an LP that
/// references undeclared variables or has crossed bounds is an error. The
/// returned assignment is re-checked against every bound and constraint.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.check_well_formed()?;

    // Structural columns.
    let mut maps = Vec::with_capacity(lp.variables.len());
    let mut upper: Vec<Option<Rational>> = Vec::new();
    for v in &lp.variables {
        let map = match (&v.lower, &v.upper) {
            (Some(l), u) => {
                upper.push(u.as_ref().map(|u| u - l));
                VarMap::Shift { col: upper.len() - 1, lower: l.clone() }
            }
            (None, Some(u)) => {
                upper.push(None);
                VarMap::Mirror { col: upper.len() - 1, upper: u.clone() }
            }
            (None, None) => {
                upper.push(None);
                upper.push(None);
                VarMap::Free { pos: upper.len() - 2, neg: upper.len() - 1 }
            }
        };
        maps.push(map);
    }
    let structural = upper.len();

    // Constraint rows over structural columns, with shifted right-hand sides.
    let m = lp.constraints.len();
    let mut sparse_rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for c in &lp.constraints {
        let mut row = Vec::with_capacity(c.terms.len());
        let mut b = c.rhs.clone();
        for (var, a) in &c.terms {
            if a.is_zero() {
                continue;
            }
            match &maps[var.0] {
                VarMap::Shift { col, lower } => {
                    row.push((*col, a.clone()));
                    b -= a * lower;
                }
                VarMap::Mirror { col, upper } => {
                    row.push((*col, -a));
                    b -= a * upper;
                }
                VarMap::Free { pos, neg } => {
                    row.push((*pos, a.clone()));
                    row.push((*neg, -a));
                }
            }
        }
        sparse_rows.push(row);
        rhs.push(b);
    }

    // Slack and artificial columns; flip rows so that every rhs is nonnegative.
    let mut ncols = structural;
    let mut slack_of = vec![None; m];
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.relation != Relation::Eq {
            slack_of[i] = Some(ncols);
            upper.push(None);
            ncols += 1;
        }
    }
    let mut negate = vec![false; m];
    let mut basis = vec![usize::MAX; m];
    let mut artificial = Vec::new();
    for i in 0..m {
        negate[i] = rhs[i].is_negative();
        let slack_sign_positive = match lp.constraints[i].relation {
            Relation::Le => !negate[i],
            Relation::Ge => negate[i],
            Relation::Eq => false,
        };
        if slack_sign_positive {
            basis[i] = slack_of[i].expect("inequality row has a slack");
        } else {
            basis[i] = ncols;
            artificial.push(ncols);
            upper.push(None);
            ncols += 1;
        }
    }

    let mut rows = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if negate[i] { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); ncols];
        for (j, a) in &sparse_rows[i] {
            row[*j] += a * &sign;
        }
        if let Some(s) = slack_of[i] {
            row[s] = match lp.constraints[i].relation {
                Relation::Le => sign.clone(),
                _ => -&sign,
            };
        }
        if basis[i] != slack_of[i].unwrap_or(usize::MAX) {
            row[basis[i]] = Rational::one();
        }
        rows.push(row);
        values.push(&rhs[i] * &sign);
    }

    let mut state = vec![ColState::AtLower; ncols];
    for &b in &basis {
        state[b] = ColState::Basic;
    }
    let mut tab = Tableau {
        rows,
        values,
        basis,
        state,
        upper,
        banned: vec![false; ncols],
        cost: Vec::new(),
    };

    if !artificial.is_empty() {
        let mut c1 = vec![Rational::zero(); ncols];
        for &a in &artificial {
            c1[a] = -Rational::one();
        }
        tab.set_costs(&c1);
        if let Step::Unbounded = tab.run() {
            return Err(Error::Internal(String::from("phase one reported unboundedness")));
        }
        let infeasible = artificial.iter().any(|&a| tab.column_value(a).is_positive());
        if infeasible {
            return Ok(LpOutcome::Infeasible);
        }
        for &a in &artificial {
            tab.banned[a] = true;
            tab.upper[a] = Some(Rational::zero());
        }
    }

    let mut c2 = vec![Rational::zero(); ncols];
    let flip = lp.sense == Sense::Minimize;
    for (var, c) in &lp.objective {
        let c = if flip { -c } else { c.clone() };
        match &maps[var.0] {
            VarMap::Shift { col, .. } => c2[*col] += c,
            VarMap::Mirror { col, .. } => c2[*col] -= c,
            VarMap::Free { pos, neg } => {
                c2[*pos] += &c;
                c2[*neg] -= c;
            }
        }
    }
    tab.set_costs(&c2);
    if let Step::Unbounded = tab.run() {
        return Ok(LpOutcome::Unbounded);
    }

    let values: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shift { col, lower } => lower + tab.column_value(*col),
            VarMap::Mirror { col, upper } => upper - tab.column_value(*col),
            VarMap::Free { pos, neg } => tab.column_value(*pos) - tab.column_value(*neg),
        })
        .collect();
    if let Some(what) = lp.first_violation(&values) {
        return Err(Error::Internal(format!("simplex solution violates {what}")));
    }
    Ok(LpOutcome::Optimal(LpSolution {
        value: lp.objective_value(&values),
        values,
    }))
}
