//! Exact optimum for paths mixing arbitrarily preemptable and
//! non-preemptable jobs.
//!
//! Non-preemptable jobs are enumerated over their start times. For every
//! placement they become tight preemptable jobs and the preemptive solver
//! finishes the job. On a path the remaining optimum depends only on the
//! union of the placed intervals, so leaf values are cached by that union.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{int, require_integer_data, start_options, NodeCounter, SearchConfig, SearchResult};
use crate::error::{Error, Result};
use crate::graph::path_edges;
use crate::instance::{validate, Instance, Preemption};
use crate::objective::Objective;
use crate::preemptive::{solve_preemptive, PreemptiveSolution};
use crate::rational::Rational;
use crate::slots::SlotSet;

struct Placement<'a> {
    instance: &'a Instance,
    q: i64,
    /// Non-preemptable edges in search order, with their start options.
    jobs: Vec<(usize, Vec<SlotSet>)>,
    /// `forced_rest[k]`: slots blocked by every option of jobs `k..`.
    forced_rest: Vec<SlotSet>,
    /// Disconnection of the all-preemptive relaxation; nothing can beat it.
    floor: Rational,
    starts: Vec<usize>,
    best: Option<(Rational, Vec<usize>)>,
    cache: BTreeMap<SlotSet, Rational>,
    counter: NodeCounter,
}

impl Placement<'_> {
    fn fixed_instance(&self, starts: &[usize]) -> Instance {
        let mut out = self.instance.clone();
        let q = Rational::from_integer(self.q);
        for ((e, _), &k) in self.jobs.iter().zip(starts) {
            let edge = &mut out.edges[*e];
            edge.release = Rational::from_integer(k as i64) / &q;
            edge.deadline = &edge.release + &edge.processing;
            edge.preemption = Preemption::Arbitrary;
        }
        out
    }

    fn solve_fixed(&self, starts: &[usize]) -> Result<PreemptiveSolution> {
        solve_preemptive(&self.fixed_instance(starts), Objective::MinDisconnection)
    }

    fn done(&self) -> bool {
        matches!(&self.best, Some((b, _)) if *b == self.floor)
    }

    fn run(&mut self, depth: usize, union: &SlotSet) -> Result<()> {
        self.counter.tick(1)?;
        if self.done() {
            return Ok(());
        }
        let mut bound = union.clone();
        bound.union_with(&self.forced_rest[depth]);
        let bound = Rational::new(bound.count() as i64, self.q);
        if matches!(&self.best, Some((b, _)) if &bound >= b) {
            return Ok(());
        }
        if depth == self.jobs.len() {
            let value = match self.cache.get(union) {
                Some(v) => v.clone(),
                None => {
                    let v = self.solve_fixed(&self.starts)?.value;
                    self.cache.insert(union.clone(), v.clone());
                    v
                }
            };
            if !matches!(&self.best, Some((b, _)) if &value >= b) {
                self.best = Some((value, self.starts.clone()));
            }
            return Ok(());
        }
        let first = int(&self.instance.edges[self.jobs[depth].0].release) * self.q as usize;
        for k in 0..self.jobs[depth].1.len() {
            let mut next = union.clone();
            next.union_with(&self.jobs[depth].1[k]);
            self.starts[depth] = first + k;
            self.run(depth + 1, &next)?;
        }
        Ok(())
    }
}

/// Exact optimum on a path whose jobs are arbitrarily preemptable or
/// non-preemptable, assuming non-preemptable jobs start on the time grid.
pub fn brute_mixed(instance: &Instance, objective: Objective, config: &SearchConfig) -> Result<SearchResult> {
    validate(instance).into_result()?;
    path_edges(instance)?;
    require_integer_data(instance)?;
    if let Some(e) = instance
        .edges
        .iter()
        .find(|e| e.preemption == Preemption::IntegralOnly)
    {
        return Err(Error::Precondition(format!(
            "mixed search handles arbitrary and non-preemptable jobs only; edge `{}` is integral",
            e.id
        )));
    }
    let q = config.resolution();
    let slots = int(&instance.horizon) * q as usize;
    let mut counter = super::NodeCounter::new(config.budget);
    let mut order: Vec<usize> = (0..instance.edges.len())
        .filter(|&e| instance.edges[e].preemption == Preemption::None)
        .collect();
    order.sort_by_key(|&e| instance.edges[e].window_len());
    let mut jobs = Vec::with_capacity(order.len());
    for e in order {
        jobs.push((e, start_options(&instance.edges[e], slots, q, &mut counter)?));
    }
    let mut forced_rest = alloc::vec![SlotSet::empty(slots); jobs.len() + 1];
    for k in (0..jobs.len()).rev() {
        let mut forced = jobs[k].1[0].clone();
        for o in &jobs[k].1[1..] {
            forced.intersect_with(o);
        }
        forced.union_with(&forced_rest[k + 1]);
        forced_rest[k] = forced;
    }
    let relaxed = instance.with_preemption(Preemption::Arbitrary);
    let floor = solve_preemptive(&relaxed, Objective::MinDisconnection)?.value;

    let mut search = Placement {
        instance,
        q,
        starts: alloc::vec![0; jobs.len()],
        jobs,
        forced_rest,
        floor,
        best: None,
        cache: BTreeMap::new(),
        counter,
    };
    search.run(0, &SlotSet::empty(slots))?;
    let (_, starts) = search.best.clone().expect("every placement is evaluated or pruned by a better one");
    let solution = search.solve_fixed(&starts)?;
    let connected = solution.connected_time;
    Ok(SearchResult {
        value: objective.value(&connected, &instance.horizon),
        schedule: solution.schedule,
        connected,
        nodes: search.counter.nodes,
    })
}
