//! Solvers specialised to path networks `s⁺ – … – s⁻`.
//!
//! On a path a single maintained edge disconnects the terminals, so the
//! disconnected time of a schedule is the measure of the union of all its
//! maintenance intervals (the busy time).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::eval::connectivity_profile;
use crate::graph::path_edges;
use crate::instance::{validate, Instance, Preemption};
use crate::objective::Objective;
use crate::preemptive::solve_preemptive;
use crate::rational::Rational;
use crate::schedule::{check_feasible, Interval, IntervalSet, Schedule};

mod exact;
mod mixed;

pub use exact::exact_nonpreemptive_path;
pub use mixed::{mixed_two_approx, MixedApproxResult};

/// Indicator of "some edge is maintained" over `[0, T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaintenanceProfile {
    /// The region where the indicator is 1.
    pub busy: IntervalSet,
    pub horizon: Rational,
    /// Measure of `busy`.
    pub active_time: Rational,
}

impl MaintenanceProfile {
    fn from_sets<'a>(sets: impl Iterator<Item = &'a IntervalSet>, horizon: &Rational) -> Self {
        let pieces: Vec<Interval> = sets.flat_map(|s| s.intervals().iter().cloned()).collect();
        let busy = IntervalSet::union_of(pieces);
        MaintenanceProfile {
            active_time: busy.measure(),
            busy,
            horizon: horizon.clone(),
        }
    }

    /// Step function as `(t, value from t on)` pairs, starting at 0.
    pub fn breakpoints(&self) -> Vec<(Rational, u8)> {
        let mut out: Vec<(Rational, u8)> = Vec::new();
        let mut push = |t: Rational, v: u8| match out.last_mut() {
            Some(last) if last.0 == t => last.1 = v,
            Some(last) if last.1 == v => {}
            _ => out.push((t, v)),
        };
        push(Rational::zero(), 0);
        for iv in self.busy.intervals() {
            push(iv.start.clone(), 1);
            push(iv.end.clone(), 0);
        }
        out
    }

    /// Measure of the busy region inside `[0, t]`.
    pub fn cumulative(&self, t: &Rational) -> Rational {
        self.busy.measure_within(&Rational::zero(), t)
    }

    /// Smallest `t` with `cumulative(t) = active_time / 2`.
    pub fn midpoint(&self) -> Rational {
        let half = &self.active_time / &Rational::from_integer(2);
        let mut acc = Rational::zero();
        for iv in self.busy.intervals() {
            let len = iv.len();
            if &acc + &len >= half {
                return &iv.start + &(&half - &acc);
            }
            acc += len;
        }
        Rational::zero()
    }
}

/// The maintenance profile of a feasible schedule on a path.
pub fn maintenance_profile(instance: &Instance, schedule: &Schedule) -> Result<MaintenanceProfile> {
    validate(instance).into_result()?;
    path_edges(instance)?;
    check_feasible(instance, schedule).into_result()?;
    Ok(MaintenanceProfile::from_sets(
        schedule.assignment.values(),
        &instance.horizon,
    ))
}

/// `2a(⌊log₂ m⌋ + 1)`: the cost guarantee of [`split_nonpreemptive`] for an
/// input of active time `a` on `m ≥ 1` edges.
pub fn split_cost_bound(active_time: &Rational, edge_count: usize) -> Rational {
    let levels = usize::BITS - edge_count.max(1).leading_zeros();
    active_time * &Rational::from_integer(2 * i64::from(levels))
}

/// Turns a preemptive schedule on a path into a non-preemptive one.
///
/// Repeatedly finds the time `t̄` splitting the active time of the remaining
/// jobs in half, runs every remaining job whose window contains `t̄` centred
/// on `t̄` (shifted into its window where needed), and recurses on the jobs
/// entirely before and entirely after `t̄`.
pub fn split_nonpreemptive(instance: &Instance, preemptive_schedule: &Schedule) -> Result<Schedule> {
    validate(instance).into_result()?;
    path_edges(instance)?;
    check_feasible(&instance.with_preemption(Preemption::Arbitrary), preemptive_schedule).into_result()?;
    let empty = IntervalSet::empty();
    let sets: Vec<&IntervalSet> = instance
        .edges
        .iter()
        .map(|e| preemptive_schedule.get(&e.id).unwrap_or(&empty))
        .collect();
    let two = Rational::from_integer(2);
    let mut out = Schedule::new();
    let mut pending: Vec<Vec<usize>> = alloc::vec![(0..instance.edges.len()).collect()];
    while let Some(jobs) = pending.pop() {
        if jobs.is_empty() {
            continue;
        }
        let profile = MaintenanceProfile::from_sets(jobs.iter().map(|&j| sets[j]), &instance.horizon);
        if profile.active_time.is_zero() {
            // Every remaining job has zero processing time.
            for &j in &jobs {
                out.set(instance.edges[j].id.clone(), IntervalSet::empty());
            }
            continue;
        }
        let t = profile.midpoint();
        let (mut before, mut after) = (Vec::new(), Vec::new());
        let mut placed = 0;
        for &j in &jobs {
            let e = &instance.edges[j];
            if e.deadline < t {
                before.push(j);
            } else if e.release > t {
                after.push(j);
            } else {
                let centred = &t - &(&e.processing / &two);
                let start = Rational::min_of(&Rational::max_of(&centred, &e.release), &e.latest_start());
                let end = &start + &e.processing;
                out.set(e.id.clone(), IntervalSet::single(start, end));
                placed += 1;
            }
        }
        if placed == 0 {
            return Err(Error::Internal(format!(
                "no remaining job window contains the split point {t}"
            )));
        }
        pending.push(after);
        pending.push(before);
    }
    check_feasible(&instance.with_preemption(Preemption::None), &out)
        .into_result()
        .map_err(|e| Error::Internal(format!("split schedule is infeasible: {e}")))?;
    Ok(out)
}

/// Outcome of [`solve_path_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSolution {
    /// Non-preemptive schedule.
    pub schedule: Schedule,
    /// Value of `schedule` under the requested objective.
    pub value: Rational,
    /// Disconnected time of `schedule`.
    pub disconnected: Rational,
    /// Active time of the optimal preemptive schedule that was split.
    pub active_time: Rational,
    /// [`split_cost_bound`] for this instance.
    pub bound: Rational,
}

/// Solves the preemptive relaxation optimally and splits the result.
pub fn solve_path_split(instance: &Instance, objective: Objective) -> Result<SplitSolution> {
    validate(instance).into_result()?;
    path_edges(instance)?;
    let relaxed = instance.with_preemption(Preemption::Arbitrary);
    let preemptive = solve_preemptive(&relaxed, Objective::MinDisconnection)?;
    let active_time = maintenance_profile(&relaxed, &preemptive.schedule)?.active_time;
    if active_time != preemptive.value {
        return Err(Error::Internal(String::from(
            "busy time of the preemptive schedule differs from its disconnected time",
        )));
    }
    let schedule = split_nonpreemptive(instance, &preemptive.schedule)?;
    let profile = connectivity_profile(&instance.with_preemption(Preemption::None), &schedule)?;
    Ok(SplitSolution {
        value: objective.value(&profile.connected_time, &instance.horizon),
        disconnected: profile.disconnected_time,
        bound: split_cost_bound(&active_time, instance.edges.len()),
        active_time,
        schedule,
    })
}
