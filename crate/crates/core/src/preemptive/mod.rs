//! Optimal schedules when every job may be preempted arbitrarily.
//!
//! The pipeline solves the interval-indexed flow LP, cancels circulations,
//! decomposes each interval's flow into paths, reserves a connectivity window
//! for every path and then places maintenance greedily around those windows.
//! The resulting schedule's connected time equals the LP optimum exactly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::eval::connectivity_profile;
use crate::instance::{normalize_parallel_edges, validate, Instance, Preemption};
use crate::lp::{solve_lp, LpOutcome};
use crate::objective::Objective;
use crate::rational::Rational;
use crate::schedule::{Interval, IntervalSet, Schedule};

mod flow;
mod model;

pub use flow::{cancel_circulations, path_decompose, FlowPath, PathDecomposition};
pub use model::{build_connectivity_lp, ConnectivityLp, FlowSlice, IntervalFlow, IntervalIndex};

/// Time each edge must stay available, per edge index.
///
/// Within interval `i`, path `ℓ` of the decomposition reserves the window
/// `[a_i + w_i Σ_{m<ℓ} x(P_m), a_i + w_i Σ_{m≤ℓ} x(P_m)]` for all of its edges.
pub fn reserved_windows(
    instance: &Instance,
    index: &IntervalIndex,
    decomposition: &PathDecomposition,
) -> Vec<Vec<Interval>> {
    let mut reserved = vec![Vec::new(); instance.edges.len()];
    for (i, paths) in decomposition.paths.iter().enumerate() {
        let w = index.width(i);
        let mut cursor = index.start(i).clone();
        for path in paths {
            let end = &cursor + &(&w * &path.value);
            for e in path.edges() {
                reserved[e].push(Interval::new(cursor.clone(), end.clone()));
            }
            cursor = end;
        }
    }
    reserved
}

/// Turns a decomposed LP solution into a schedule.
///
/// Each job is processed as early as possible inside its window, skipping
/// the windows reserved for paths that use its edge.
pub fn extract_schedule(
    instance: &Instance,
    index: &IntervalIndex,
    decomposition: &PathDecomposition,
) -> Result<Schedule> {
    let reserved = reserved_windows(instance, index, decomposition);
    let mut schedule = Schedule::new();
    for (e, edge) in instance.edges.iter().enumerate() {
        let forbidden = IntervalSet::union_of(reserved[e].clone());
        let mut left = edge.processing.clone();
        let mut pieces = Vec::new();
        for gap in forbidden.gaps_within(&edge.release, &edge.deadline) {
            if !left.is_positive() {
                break;
            }
            let take = Rational::min_of(&gap.len(), &left);
            pieces.push(Interval::new(gap.start.clone(), &gap.start + &take));
            left -= take;
        }
        if left.is_positive() {
            return Err(Error::Internal(format!(
                "edge `{}` lacks {left} units of free time for its job",
                edge.id
            )));
        }
        let set = IntervalSet::new(pieces)
            .map_err(|err| Error::Internal(format!("overlapping placement: {err}")))?;
        schedule.set(edge.id.clone(), set);
    }
    Ok(schedule)
}

/// An optimal preemptive schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreemptiveSolution {
    pub schedule: Schedule,
    /// Value under the requested objective.
    pub value: Rational,
    /// Connected time of `schedule` (equal to the LP optimum).
    pub connected_time: Rational,
}

/// Solves MAXCONNECTIVITY or MINCONNECTIVITY exactly for arbitrarily
/// preemptable jobs on any graph.
pub fn solve_preemptive(instance: &Instance, objective: Objective) -> Result<PreemptiveSolution> {
    validate(instance).into_result()?;
    if let Some(e) = instance
        .edges
        .iter()
        .find(|e| e.preemption != Preemption::Arbitrary)
    {
        return Err(Error::Precondition(format!(
            "preemptive solver needs arbitrarily preemptable jobs; edge `{}` is {}",
            e.id, e.preemption
        )));
    }
    let normalized = normalize_parallel_edges(instance);
    let model = build_connectivity_lp(&normalized)?;
    let solution = match solve_lp(&model.lp)? {
        LpOutcome::Optimal(s) => s,
        other => {
            return Err(Error::Internal(format!(
                "connectivity LP is always feasible and bounded, got {other:?}"
            )))
        }
    };
    let flow = cancel_circulations(&normalized, &model.flow(&solution))?;
    let decomposition = path_decompose(&normalized, &flow)?;
    let full = extract_schedule(&normalized, &model.index, &decomposition)?;

    let mut schedule = Schedule::new();
    for e in &instance.edges {
        let set = full.get(&e.id).cloned().unwrap_or_default();
        schedule.set(e.id.clone(), set);
    }
    let profile = connectivity_profile(instance, &schedule)?;
    if profile.connected_time != solution.value {
        return Err(Error::Internal(format!(
            "extracted schedule connects for {} but the LP optimum is {}",
            profile.connected_time, solution.value
        )));
    }
    Ok(PreemptiveSolution {
        value: objective.value(&profile.connected_time, &instance.horizon),
        connected_time: profile.connected_time,
        schedule,
    })
}
