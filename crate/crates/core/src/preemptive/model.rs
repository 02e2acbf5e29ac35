//! The interval-indexed flow LP.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{relevant_time_points, Instance};
use crate::lp::{LinearProgram, LpSolution, Relation, Sense, VarId};
use crate::rational::Rational;

/// Consecutive time intervals between relevant time points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalIndex {
    /// `t_0 < t_1 < ... < t_k`; interval `i` (0-based) is `[t_i, t_{i+1}]`.
    pub boundaries: Vec<Rational>,
}

impl IntervalIndex {
    /// Relevant time points of `instance` plus its horizon.
    pub fn new(instance: &Instance) -> Self {
        let mut points: BTreeSet<Rational> = relevant_time_points(instance).into_iter().collect();
        points.insert(instance.horizon.clone());
        IntervalIndex {
            boundaries: points.into_iter().collect(),
        }
    }

    /// Number of intervals `k`.
    pub fn len(&self) -> usize {
        self.boundaries.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self, i: usize) -> &Rational {
        &self.boundaries[i]
    }

    pub fn end(&self, i: usize) -> &Rational {
        &self.boundaries[i + 1]
    }

    pub fn width(&self, i: usize) -> Rational {
        self.end(i) - self.start(i)
    }
}

/// LP variable values for one interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSlice {
    /// `f_i`: fraction of the interval with connectivity.
    pub value: Rational,
    /// `y_e`: fraction of the interval edge `e` is available.
    pub edge_availability: Vec<Rational>,
    /// `x_a` per arc; arc `2e` runs `u → v` and arc `2e + 1` runs `v → u`.
    pub arc_flow: Vec<Rational>,
}

/// LP variable values for all intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFlow {
    pub slices: Vec<FlowSlice>,
}

/// The LP for an instance together with its variable layout.
#[derive(Clone, Debug)]
pub struct ConnectivityLp {
    pub lp: LinearProgram,
    pub index: IntervalIndex,
    f: Vec<VarId>,
    /// `y[i][e]`
    y: Vec<Vec<VarId>>,
    /// `x[i][a]`
    x: Vec<Vec<VarId>>,
}

impl ConnectivityLp {
    /// Reads the LP variables of `solution` back into per-interval form.
    pub fn flow(&self, solution: &LpSolution) -> IntervalFlow {
        let slices = (0..self.index.len())
            .map(|i| FlowSlice {
                value: solution.value_of(self.f[i]).clone(),
                edge_availability: self.y[i].iter().map(|v| solution.value_of(*v).clone()).collect(),
                arc_flow: self.x[i].iter().map(|v| solution.value_of(*v).clone()).collect(),
            })
            .collect();
        IntervalFlow { slices }
    }
}

/// Builds `max Σ w_i f_i` subject to flow conservation per interval,
/// processing-time capacity per edge, arc flow ≤ edge availability, and
/// all variables in `[0, 1]`.
///
/// The instance must be valid and free of parallel edges.
pub fn build_connectivity_lp(instance: &Instance) -> Result<ConnectivityLp> {
    let graph = Graph::new(instance)?;
    let index = IntervalIndex::new(instance);
    let k = index.len();
    let m = instance.edges.len();
    let unit = || (Some(Rational::zero()), Some(Rational::one()));
    let mut lp = LinearProgram::new(Sense::Maximize);

    let f: Vec<VarId> = (0..k)
        .map(|i| {
            let (lo, hi) = unit();
            lp.add_variable(format!("f{i}"), lo, hi)
        })
        .collect();
    let y: Vec<Vec<VarId>> = (0..k)
        .map(|i| {
            instance
                .edges
                .iter()
                .map(|e| {
                    let (lo, hi) = unit();
                    lp.add_variable(format!("y{i}_{}", e.id), lo, hi)
                })
                .collect()
        })
        .collect();
    let x: Vec<Vec<VarId>> = (0..k)
        .map(|i| {
            let mut arcs = Vec::with_capacity(2 * m);
            for e in &instance.edges {
                for dir in ["fw", "bw"] {
                    let (lo, hi) = unit();
                    arcs.push(lp.add_variable(format!("x{i}_{}_{dir}", e.id), lo, hi));
                }
            }
            arcs
        })
        .collect();

    for i in 0..k {
        lp.add_objective_term(f[i], index.width(i));
    }

    // Flow conservation: outflow − inflow = f_i at the source, −f_i at the sink.
    for i in 0..k {
        let mut terms: Vec<Vec<(VarId, Rational)>> = vec![Vec::new(); graph.node_count];
        for (e, &(u, v)) in graph.ends.iter().enumerate() {
            terms[u].push((x[i][2 * e], Rational::one()));
            terms[v].push((x[i][2 * e], -Rational::one()));
            terms[v].push((x[i][2 * e + 1], Rational::one()));
            terms[u].push((x[i][2 * e + 1], -Rational::one()));
        }
        terms[graph.source].push((f[i], -Rational::one()));
        terms[graph.sink].push((f[i], Rational::one()));
        for (v, row) in terms.into_iter().enumerate() {
            if !row.is_empty() {
                lp.add_constraint(format!("flow{i}_{}", instance.nodes[v]), row, Relation::Eq, Rational::zero());
            }
        }
    }

    // Processing: Σ_{I_i ⊆ [r,d]} (1 − y_e^i) w_i ≥ p_e.
    for (e, edge) in instance.edges.iter().enumerate() {
        let mut terms = Vec::new();
        let mut window = Rational::zero();
        for i in 0..k {
            let inside = &edge.release <= index.start(i) && index.end(i) <= &edge.deadline;
            let outside = index.end(i) <= &edge.release || &edge.deadline <= index.start(i);
            if !inside && !outside {
                return Err(Error::Internal(format!(
                    "interval {i} straddles the window of edge `{}`",
                    edge.id
                )));
            }
            if inside {
                let w = index.width(i);
                terms.push((y[i][e], -&w));
                window += w;
            }
        }
        if !terms.is_empty() {
            lp.add_constraint(
                format!("proc_{}", edge.id),
                terms,
                Relation::Ge,
                &edge.processing - &window,
            );
        }
    }

    // Arc flow bounded by edge availability.
    for i in 0..k {
        for e in 0..m {
            for a in [2 * e, 2 * e + 1] {
                lp.add_constraint(
                    format!("cap{i}_{a}"),
                    vec![(x[i][a], Rational::one()), (y[i][e], -Rational::one())],
                    Relation::Le,
                    Rational::zero(),
                );
            }
        }
    }

    Ok(ConnectivityLp { lp, index, f, y, x })
}
