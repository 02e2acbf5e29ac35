//! An `(ℓ+1)`-approximation for non-preemptive MAXCONNECTIVITY on any graph,
//! where `ℓ` is the number of distinct latest start times `d_e − p_e`.
//!
//! Candidate `i` starts every job with `d_e − p_e < t_i` at its release date
//! and every other job at its latest start. Candidate `i` is optimal inside
//! `[t_{i−1}, t_i]`, so the windows' scores sum to an upper bound on the
//! optimum and the best single score is within a factor `ℓ+1` of it.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::eval::connected_time;
use crate::graph::Graph;
use crate::instance::{validate, Instance, Preemption};
use crate::rational::Rational;
use crate::schedule::{IntervalSet, Schedule};

/// Sorted distinct latest start times `d_e − p_e`.
pub fn latest_start_points(instance: &Instance) -> Vec<Rational> {
    instance
        .edges
        .iter()
        .map(|e| e.latest_start())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `t_0 = 0, t_1, ..., t_ℓ, t_{ℓ+1} = T`.
pub fn cut_points(instance: &Instance) -> Vec<Rational> {
    let mut points = Vec::new();
    points.push(Rational::zero());
    points.extend(latest_start_points(instance));
    points.push(instance.horizon.clone());
    points
}

/// Candidate schedule `S_i` for `1 ≤ i ≤ ℓ+1`.
pub fn build_candidate(instance: &Instance, i: usize) -> Result<Schedule> {
    let points = cut_points(instance);
    if i == 0 || i >= points.len() {
        return Err(Error::Precondition(format!(
            "candidate index {i} outside 1..={}",
            points.len() - 1
        )));
    }
    let t = &points[i];
    let mut schedule = Schedule::new();
    for e in &instance.edges {
        let latest = e.latest_start();
        let start = if &latest < t { e.release.clone() } else { latest };
        let end = &start + &e.processing;
        schedule.set(e.id.clone(), IntervalSet::single(start, end));
    }
    Ok(schedule)
}

/// Connected measure of `schedule` inside `[a, b]`.
///
/// The window is cut at every `r_e`, `r_e + p_e`, `d_e` and schedule
/// endpoint inside it, and connectivity is tested at each piece's midpoint.
pub fn score_candidate(
    instance: &Instance,
    schedule: &Schedule,
    a: &Rational,
    b: &Rational,
) -> Result<Rational> {
    if a >= b {
        return Ok(Rational::zero());
    }
    let graph = Graph::new(instance)?;
    let mut bounds: BTreeSet<Rational> = BTreeSet::new();
    bounds.insert(a.clone());
    bounds.insert(b.clone());
    let inside = |t: &Rational| a < t && t < b;
    for e in &instance.edges {
        for t in [e.release.clone(), &e.release + &e.processing, e.deadline.clone()] {
            if inside(&t) {
                bounds.insert(t);
            }
        }
    }
    for t in schedule.endpoints() {
        if inside(t) {
            bounds.insert(t.clone());
        }
    }
    let bounds: Vec<Rational> = bounds.into_iter().collect();
    let sets: Vec<Option<&IntervalSet>> = instance.edges.iter().map(|e| schedule.get(&e.id)).collect();
    let two = Rational::from_integer(2);
    let mut score = Rational::zero();
    for w in bounds.windows(2) {
        let mid = (&w[0] + &w[1]) / &two;
        if graph.connected(|e| !sets[e].is_some_and(|s| s.covers(&mid))) {
            score += &w[1] - &w[0];
        }
    }
    Ok(score)
}

/// Outcome of [`approx_max_connectivity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    /// The returned candidate.
    pub schedule: Schedule,
    /// 1-based index of the returned candidate.
    pub index: usize,
    /// `c(t_i)` of the returned candidate; `OPT ≤ (ℓ+1) · reported_score`.
    pub reported_score: Rational,
    /// Connected time of the returned candidate over the whole horizon.
    pub full_value: Rational,
    /// `t_0, ..., t_{ℓ+1}`.
    pub cut_points: Vec<Rational>,
    /// `c(t_1), ..., c(t_{ℓ+1})`.
    pub scores: Vec<Rational>,
}

impl ApproxResult {
    /// Number of distinct latest start times.
    pub fn ell(&self) -> usize {
        self.cut_points.len() - 2
    }
}

/// Runs the approximation; every job must be non-preemptable.
///
/// Ties between equal scores go to the smallest index.
pub fn approx_max_connectivity(instance: &Instance) -> Result<ApproxResult> {
    validate(instance).into_result()?;
    if let Some(e) = instance.edges.iter().find(|e| e.preemption != Preemption::None) {
        return Err(Error::Precondition(format!(
            "approximation needs non-preemptable jobs; edge `{}` is {}",
            e.id, e.preemption
        )));
    }
    let points = cut_points(instance);
    let mut scores = Vec::with_capacity(points.len() - 1);
    let mut best: Option<(usize, Schedule)> = None;
    for i in 1..points.len() {
        let candidate = build_candidate(instance, i)?;
        let c = score_candidate(instance, &candidate, &points[i - 1], &points[i])?;
        let better = match &best {
            None => true,
            Some((j, _)) => c > scores[*j - 1],
        };
        scores.push(c);
        if better {
            best = Some((i, candidate));
        }
    }
    let (index, schedule) = best.expect("at least one candidate");
    let full_value = connected_time(instance, &schedule)?;
    Ok(ApproxResult {
        reported_score: scores[index - 1].clone(),
        index,
        full_value,
        schedule,
        cut_points: points,
        scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::connectivity_profile;
    use crate::gen::figures::{gen_fig1, gen_unbounded_pop};
    use crate::instance::InstanceBuilder;
    use crate::rational::qi;
    use crate::schedule::check_feasible;

    #[test]
    fn fig1_latest_starts_are_zero_and_one() {
        assert_eq!(latest_start_points(&gen_fig1(Preemption::None)), [qi(0), qi(1)]);
    }

    #[test]
    fn tight_jobs_give_one_point_per_release() {
        let inst = InstanceBuilder::new()
            .int_edge("s", "a", 0, 2, 2, Preemption::None)
            .int_edge("a", "b", 3, 4, 1, Preemption::None)
            .int_edge("b", "t", 3, 5, 2, Preemption::None)
            .build("s", "t");
        assert_eq!(latest_start_points(&inst), [qi(0), qi(3)]);
    }

    #[test]
    fn candidates_anchor_left_or_right() {
        let inst = InstanceBuilder::new()
            .int_edge("s", "a", 0, 4, 1, Preemption::None)
            .int_edge("a", "t", 0, 6, 2, Preemption::None)
            .build("s", "t");
        // Cut points 0, 3, 4, 6.
        let s1 = build_candidate(&inst, 1).unwrap();
        assert_eq!(s1.get("e1").unwrap(), &IntervalSet::single(qi(3), qi(4)));
        assert_eq!(s1.get("e2").unwrap(), &IntervalSet::single(qi(4), qi(6)));
        let s2 = build_candidate(&inst, 2).unwrap();
        assert_eq!(s2.get("e1").unwrap(), &IntervalSet::single(qi(0), qi(1)));
        assert_eq!(s2.get("e2").unwrap(), &IntervalSet::single(qi(4), qi(6)));
        assert!(check_feasible(&inst, &s2).is_feasible());
        let s3 = build_candidate(&inst, 3).unwrap();
        assert_eq!(s3.get("e2").unwrap(), &IntervalSet::single(qi(0), qi(2)));
        assert!(build_candidate(&inst, 0).is_err());
        assert!(build_candidate(&inst, 4).is_err());
    }

    #[test]
    fn scores_agree_with_profile() {
        let inst = gen_fig1(Preemption::None);
        let points = cut_points(&inst);
        for i in 1..points.len() {
            let s = build_candidate(&inst, i).unwrap();
            let profile = connectivity_profile(&inst, &s).unwrap();
            let (a, b) = (&points[i - 1], &points[i]);
            assert_eq!(
                score_candidate(&inst, &s, a, b).unwrap(),
                profile.connected_within(a, b)
            );
        }
    }

    #[test]
    fn empty_and_blocked_windows() {
        let inst = InstanceBuilder::new()
            .int_edge("s", "t", 0, 4, 2, Preemption::None)
            .build("s", "t");
        let s = build_candidate(&inst, 1).unwrap(); // job on [2, 4]
        assert_eq!(score_candidate(&inst, &s, &qi(0), &qi(2)).unwrap(), qi(2));
        assert_eq!(score_candidate(&inst, &s, &qi(2), &qi(4)).unwrap(), qi(0));
        assert_eq!(score_candidate(&inst, &s, &qi(2), &qi(2)).unwrap(), qi(0));
    }

    #[test]
    fn unbounded_pop_instance_scores_zero() {
        let res = approx_max_connectivity(&gen_unbounded_pop(Preemption::None)).unwrap();
        assert_eq!(res.reported_score, qi(0));
        assert_eq!(res.full_value, qi(0));
        assert_eq!(res.index, 1);
    }

    #[test]
    fn single_job_is_solved_exactly() {
        let inst = InstanceBuilder::new()
            .int_edge("s", "t", 1, 5, 2, Preemption::None)
            .horizon(qi(5))
            .build("s", "t");
        let res = approx_max_connectivity(&inst).unwrap();
        // Cut points 0, 3, 5: the window [0, 3] stays fully connected.
        assert_eq!(res.reported_score, qi(3));
        assert_eq!(res.full_value, qi(3));
        assert_eq!(res.ell(), 1);
    }

    #[test]
    fn rejects_preemptable_jobs() {
        assert!(matches!(
            approx_max_connectivity(&gen_fig1(Preemption::Arbitrary)),
            Err(Error::Precondition(_))
        ));
    }
}
