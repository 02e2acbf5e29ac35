//! Exact non-preemptive busy-time minimisation on a path by branch and bound.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::eval::connectivity_profile;
use crate::graph::path_edges;
use crate::instance::{validate, Instance, Preemption};
use crate::objective::Objective;
use crate::oracle::{require_integer_data, start_options, NodeCounter, SearchConfig, SearchResult};
use crate::rational::Rational;
use crate::schedule::Schedule;
use crate::slots::SlotSet;

struct Search<'a> {
    /// Start options per job, in search order.
    options: &'a [Vec<SlotSet>],
    /// `forced_rest[k]`: slots blocked by every option of jobs `k..`.
    forced_rest: &'a [SlotSet],
    choice: Vec<usize>,
    best: Option<(u32, Vec<usize>)>,
    counter: NodeCounter,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, union: &SlotSet) -> Result<()> {
        self.counter.tick(1)?;
        let mut bound = union.clone();
        bound.union_with(&self.forced_rest[depth]);
        let bound = bound.count();
        if matches!(&self.best, Some((b, _)) if bound >= *b) {
            return Ok(());
        }
        if depth == self.options.len() {
            self.best = Some((bound, self.choice.clone()));
            return Ok(());
        }
        let options = self.options;
        for (k, option) in options[depth].iter().enumerate() {
            let mut next = union.clone();
            next.union_with(option);
            self.choice[depth] = k;
            self.run(depth + 1, &next)?;
        }
        Ok(())
    }
}

/// Exact optimum for non-preemptable jobs on a path with integer data.
///
/// Jobs are branched on in order of release date, then deadline; a branch is
/// cut once the busy time already forced reaches the best schedule found.
/// Start times are integral, or half-integral with `config.half_integral`.
pub fn exact_nonpreemptive_path(
    instance: &Instance,
    objective: Objective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    validate(instance).into_result()?;
    path_edges(instance)?;
    require_integer_data(instance)?;
    if let Some(e) = instance.edges.iter().find(|e| e.preemption != Preemption::None) {
        return Err(Error::Precondition(format!(
            "exact path search needs non-preemptable jobs; edge `{}` is {}",
            e.id, e.preemption
        )));
    }
    let q = config.resolution();
    let slots = instance.horizon.to_i64().expect("integer horizon") as usize * q as usize;
    let mut counter = NodeCounter::new(config.budget);
    let mut order: Vec<usize> = (0..instance.edges.len()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (&instance.edges[a], &instance.edges[b]);
        ea.release.cmp(&eb.release).then(ea.deadline.cmp(&eb.deadline))
    });
    let mut options = Vec::with_capacity(order.len());
    for &e in &order {
        options.push(start_options(&instance.edges[e], slots, q, &mut counter)?);
    }
    let mut forced_rest = vec![SlotSet::empty(slots); order.len() + 1];
    for k in (0..order.len()).rev() {
        let mut forced = options[k][0].clone();
        for o in &options[k][1..] {
            forced.intersect_with(o);
        }
        forced.union_with(&forced_rest[k + 1]);
        forced_rest[k] = forced;
    }
    let mut search = Search {
        options: &options,
        forced_rest: &forced_rest,
        choice: vec![0; order.len()],
        best: None,
        counter,
    };
    search.run(0, &SlotSet::empty(slots))?;
    let (busy, choice) = search.best.take().expect("the first leaf is never pruned");
    let mut schedule = Schedule::new();
    for ((&e, &k), opts) in order.iter().zip(&choice).zip(&options) {
        schedule.set(instance.edges[e].id.clone(), opts[k].to_intervals(slots, q));
    }
    let profile = connectivity_profile(instance, &schedule)?;
    let disconnected = Rational::new(i64::from(busy), q);
    if profile.disconnected_time != disconnected {
        return Err(Error::Internal(format!(
            "busy time {disconnected} differs from evaluated disconnected time {}",
            profile.disconnected_time
        )));
    }
    Ok(SearchResult {
        value: objective.value(&profile.connected_time, &instance.horizon),
        connected: profile.connected_time,
        schedule,
        nodes: search.counter.nodes,
    })
}
