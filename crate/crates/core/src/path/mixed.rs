//! A 2-approximation for paths mixing preemptable and non-preemptable jobs.

use alloc::format;

use super::exact_nonpreemptive_path;
use crate::error::{Error, Result};
use crate::eval::connectivity_profile;
use crate::graph::path_edges;
use crate::instance::{validate, Instance, Preemption};
use crate::objective::Objective;
use crate::oracle::SearchConfig;
use crate::preemptive::solve_preemptive;
use crate::rational::Rational;
use crate::schedule::{IntervalSet, Schedule};

/// Outcome of [`mixed_two_approx`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedApproxResult {
    pub schedule: Schedule,
    /// Value of `schedule` under the requested objective.
    pub value: Rational,
    /// Disconnected time of `schedule`.
    pub disconnected: Rational,
    /// Optimal disconnected time of the preemptable jobs alone.
    pub preemptive_cost: Rational,
    /// Optimal disconnected time of the non-preemptable jobs alone.
    pub nonpreemptive_cost: Rational,
    /// Search states visited for the non-preemptable part.
    pub nodes: u64,
}

/// Copy of `instance` in which the jobs outside `keep` need no maintenance.
fn only(instance: &Instance, keep: Preemption, as_mode: Preemption) -> Instance {
    let mut out = instance.clone();
    for e in &mut out.edges {
        if e.preemption != keep {
            e.processing = Rational::zero();
        }
        e.preemption = as_mode;
    }
    out
}

/// Solves the preemptable and the non-preemptable jobs separately and
/// optimally, then overlays the two schedules.
///
/// Each part costs at most the mixed optimum, so the overlay disconnects the
/// path for at most twice as long as an optimal schedule.
pub fn mixed_two_approx(
    instance: &Instance,
    objective: Objective,
    config: &SearchConfig,
) -> Result<MixedApproxResult> {
    validate(instance).into_result()?;
    path_edges(instance)?;
    if let Some(e) = instance
        .edges
        .iter()
        .find(|e| e.preemption == Preemption::IntegralOnly)
    {
        return Err(Error::Precondition(format!(
            "mixed approximation handles arbitrary and non-preemptable jobs only; edge `{}` is integral",
            e.id
        )));
    }
    let preemptive = solve_preemptive(
        &only(instance, Preemption::Arbitrary, Preemption::Arbitrary),
        Objective::MinDisconnection,
    )?;
    let exact = exact_nonpreemptive_path(
        &only(instance, Preemption::None, Preemption::None),
        Objective::MinDisconnection,
        config,
    )?;
    let mut schedule = Schedule::new();
    for e in &instance.edges {
        let part = match e.preemption {
            Preemption::None => &exact.schedule,
            _ => &preemptive.schedule,
        };
        schedule.set(e.id.clone(), part.get(&e.id).cloned().unwrap_or_else(IntervalSet::empty));
    }
    let profile = connectivity_profile(instance, &schedule)?;
    Ok(MixedApproxResult {
        value: objective.value(&profile.connected_time, &instance.horizon),
        disconnected: profile.disconnected_time,
        preemptive_cost: preemptive.value,
        nonpreemptive_cost: exact.value,
        nodes: exact.nodes,
        schedule,
    })
}
