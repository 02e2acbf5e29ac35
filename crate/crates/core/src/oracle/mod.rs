//! Exhaustive exact solvers for desk-scale instances on arbitrary graphs.
//!
//! Time is discretized into slots of width `1/q` (`q = 1`, or `q = 2` in
//! half-integral mode). Every job gets an explicit list of options (a start
//! time for non-preemptable jobs, a choice of unit slots for integrally
//! preemptable ones), and a depth-first branch and bound picks one option per
//! job. Two bounds drive the pruning:
//!
//! * optimistic: undecided jobs block only the slots every option blocks;
//! * pessimistic: undecided jobs block every slot some option blocks.
//!
//! Both are exact connectivity counts, so when they agree any completion is
//! optimal for the subtree. The search never truncates silently: running out
//! of budget is reported as [`Error::BudgetExceeded`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::eval::connectivity_profile;
use crate::graph::Graph;
use crate::instance::{validate, Instance, Preemption};
use crate::objective::Objective;
use crate::rational::Rational;
use crate::schedule::Schedule;
use crate::slots::{connected_slots, slot_of, SlotSet};

mod mixed;

pub use mixed::brute_mixed;

/// Upper bound on the number of search states an oracle may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 10_000_000,
        }
    }
}

/// Budget plus the time grid of the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: SearchBudget,
    /// Let non-preemptable jobs start at half-integral times too.
    pub half_integral: bool,
}

impl SearchConfig {
    pub fn with_budget(max_nodes: u64) -> Self {
        SearchConfig {
            budget: SearchBudget { max_nodes },
            half_integral: false,
        }
    }

    pub(crate) fn resolution(&self) -> i64 {
        if self.half_integral {
            2
        } else {
            1
        }
    }
}

/// An optimal schedule found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub schedule: Schedule,
    /// Value under the requested objective (or connected measure inside the
    /// requested window for the windowed searches).
    pub value: Rational,
    /// Connected time of `schedule` inside the searched scope.
    pub connected: Rational,
    /// Search states visited.
    pub nodes: u64,
}

/// Counts visited states against a budget.
#[derive(Clone, Debug)]
pub(crate) struct NodeCounter {
    pub nodes: u64,
    max: u64,
}

impl NodeCounter {
    pub fn new(budget: SearchBudget) -> Self {
        NodeCounter {
            nodes: 0,
            max: budget.max_nodes,
        }
    }

    pub fn tick(&mut self, by: u64) -> Result<()> {
        self.nodes += by;
        if self.nodes > self.max {
            Err(Error::BudgetExceeded { nodes: self.nodes })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn require_integer_data(instance: &Instance) -> Result<()> {
    if instance.has_integer_data() {
        Ok(())
    } else {
        Err(Error::Precondition(String::from(
            "exhaustive search needs integer release dates, deadlines, processing times and horizon",
        )))
    }
}

fn int(t: &Rational) -> usize {
    t.to_i64().expect("integer data checked") as usize
}

/// Slots a non-preemptable job may occupy: one option per start time.
pub(crate) fn start_options(
    edge: &crate::instance::Edge,
    slots: usize,
    q: i64,
    counter: &mut NodeCounter,
) -> Result<Vec<SlotSet>> {
    let q = q as usize;
    let len = int(&edge.processing) * q;
    let first = int(&edge.release) * q;
    let last = int(&edge.latest_start()) * q;
    if len == 0 {
        return Ok(vec![SlotSet::empty(slots)]);
    }
    counter.tick((last - first + 1) as u64)?;
    Ok((first..=last).map(|k| SlotSet::range(slots, k, k + len)).collect())
}

/// All ways of choosing `p` unit slots of the window, in lexicographic order.
fn unit_slot_options(
    edge: &crate::instance::Edge,
    slots: usize,
    q: i64,
    counter: &mut NodeCounter,
) -> Result<Vec<SlotSet>> {
    let q = q as usize;
    let units: Vec<usize> = (int(&edge.release)..int(&edge.deadline)).collect();
    let p = int(&edge.processing);
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..p).collect();
    loop {
        counter.tick(1)?;
        let mut set = SlotSet::empty(slots);
        for &i in &pick {
            set.insert_range(units[i] * q, (units[i] + 1) * q);
        }
        out.push(set);
        // Advance to the next combination.
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pick[i] < units.len() - p + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..p {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Slots of a non-preemptable job for each of the given start times.
fn restricted_options(
    edge: &crate::instance::Edge,
    allowed: &[Rational],
    slots: usize,
    q: i64,
) -> Result<Vec<SlotSet>> {
    if allowed.is_empty() {
        return Err(Error::Precondition(format!("no start times allowed for edge `{}`", edge.id)));
    }
    let len = int(&edge.processing) * q as usize;
    allowed
        .iter()
        .map(|t| match slot_of(t, q) {
            Some(k) if *t >= edge.release && *t <= edge.latest_start() => Ok(SlotSet::range(slots, k, k + len)),
            _ => Err(Error::Precondition(format!(
                "start {t} of edge `{}` is off the grid or outside [{}, {}]",
                edge.id,
                edge.release,
                edge.latest_start()
            ))),
        })
        .collect()
}

struct Job {
    edge: usize,
    options: Vec<SlotSet>,
    forced: SlotSet,
    hull: SlotSet,
}

impl Job {
    fn new(edge: usize, options: Vec<SlotSet>) -> Self {
        let mut forced = options[0].clone();
        let mut hull = options[0].clone();
        for o in &options[1..] {
            forced.intersect_with(o);
            hull.union_with(o);
        }
        Job {
            edge,
            options,
            forced,
            hull,
        }
    }
}

struct Search<'a> {
    graph: &'a Graph,
    jobs: &'a [Job],
    scope: &'a SlotSet,
    optimistic: Vec<SlotSet>,
    pessimistic: Vec<SlotSet>,
    choice: Vec<usize>,
    best: Option<(u32, Vec<usize>)>,
    counter: NodeCounter,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        self.counter.tick(1)?;
        let upper = connected_slots(self.graph, &self.optimistic, self.scope).count();
        if matches!(&self.best, Some((b, _)) if upper <= *b) {
            return Ok(());
        }
        let lower = connected_slots(self.graph, &self.pessimistic, self.scope).count();
        if lower == upper {
            let mut choice = self.choice.clone();
            choice[depth..].fill(0);
            self.best = Some((lower, choice));
            return Ok(());
        }
        let jobs = self.jobs;
        let job = &jobs[depth];
        for (k, option) in job.options.iter().enumerate() {
            self.optimistic[job.edge] = option.clone();
            self.pessimistic[job.edge] = option.clone();
            self.choice[depth] = k;
            self.run(depth + 1)?;
        }
        self.optimistic[job.edge] = job.forced.clone();
        self.pessimistic[job.edge] = job.hull.clone();
        Ok(())
    }
}

/// Maximizes connected slots inside `[a, b]` over all option choices.
///
/// Jobs keep their own regime: non-preemptable jobs choose a start time,
/// integrally preemptable jobs a set of unit slots. Arbitrarily preemptable
/// jobs cannot be enumerated and are rejected.
///
/// Jobs listed in `starts` only try the given start times.
fn search(
    instance: &Instance,
    a: &Rational,
    b: &Rational,
    config: &SearchConfig,
    starts: &BTreeMap<String, Vec<Rational>>,
) -> Result<(Schedule, Rational, u64)> {
    validate(instance).into_result()?;
    require_integer_data(instance)?;
    let q = config.resolution();
    let slots = int(&instance.horizon) * q as usize;
    let (lo, hi) = match (slot_of(a, q), slot_of(b, q)) {
        (Some(lo), Some(hi)) if lo <= hi && hi <= slots => (lo, hi),
        _ => {
            return Err(Error::Precondition(format!(
                "search window [{a}, {b}] must lie on the time grid inside [0, {}]",
                instance.horizon
            )))
        }
    };
    let graph = Graph::new(instance)?;
    if let Some(id) = starts.keys().find(|id| instance.edge(id).is_none()) {
        return Err(Error::Precondition(format!("start restriction names unknown edge `{id}`")));
    }
    let mut counter = NodeCounter::new(config.budget);
    let mut jobs = Vec::with_capacity(instance.edges.len());
    for (e, edge) in instance.edges.iter().enumerate() {
        let options = match (edge.preemption, starts.get(&edge.id)) {
            (Preemption::None, Some(allowed)) => restricted_options(edge, allowed, slots, q)?,
            (_, Some(_)) => {
                return Err(Error::Precondition(format!(
                    "start restriction on preemptable edge `{}`",
                    edge.id
                )))
            }
            (Preemption::None, None) => start_options(edge, slots, q, &mut counter)?,
            (Preemption::IntegralOnly, None) => unit_slot_options(edge, slots, q, &mut counter)?,
            (Preemption::Arbitrary, None) => {
                return Err(Error::Precondition(format!(
                    "exhaustive search cannot enumerate arbitrarily preemptable edge `{}`",
                    edge.id
                )))
            }
        };
        jobs.push(Job::new(e, options));
    }
    // Most constrained first: narrow windows, then few options.
    jobs.sort_by(|x, y| {
        let ex = &instance.edges[x.edge];
        let ey = &instance.edges[y.edge];
        ex.window_len()
            .cmp(&ey.window_len())
            .then(x.options.len().cmp(&y.options.len()))
    });
    let scope = SlotSet::range(slots, lo, hi);
    let mut state = Search {
        graph: &graph,
        jobs: &jobs,
        scope: &scope,
        optimistic: Vec::new(),
        pessimistic: Vec::new(),
        choice: vec![0; jobs.len()],
        best: None,
        counter,
    };
    state.optimistic = vec![SlotSet::empty(slots); instance.edges.len()];
    state.pessimistic = state.optimistic.clone();
    for job in &jobs {
        state.optimistic[job.edge] = job.forced.clone();
        state.pessimistic[job.edge] = job.hull.clone();
    }
    state.run(0)?;
    let (count, choice) = state.best.expect("the root always yields a schedule");
    let mut schedule = Schedule::new();
    let mut ordered: Vec<(usize, usize)> = jobs.iter().map(|j| j.edge).zip(choice).collect();
    ordered.sort();
    for (e, k) in ordered {
        let job = jobs.iter().find(|j| j.edge == e).expect("one job per edge");
        schedule.set(instance.edges[e].id.clone(), job.options[k].to_intervals(slots, q));
    }
    let connected = Rational::new(count as i64, q);
    let check = connectivity_profile(instance, &schedule)?.connected_within(a, b);
    if check != connected {
        return Err(Error::Internal(format!(
            "slot search counted {connected} connected time but the sweep finds {check}"
        )));
    }
    Ok((schedule, connected, state.counter.nodes))
}

/// Exact optimum over the jobs' own regimes (non-preemptable or integrally
/// preemptable), on any graph.
pub fn brute_force(instance: &Instance, objective: Objective, config: &SearchConfig) -> Result<SearchResult> {
    brute_force_restricted(instance, objective, &BTreeMap::new(), config)
}

/// Like [`brute_force`], but the non-preemptable jobs named in `starts` may
/// only start at the listed times.
///
/// The result is optimal over the restricted schedules only; it is exact for
/// the instance whenever some optimal schedule uses the allowed starts.
pub fn brute_force_restricted(
    instance: &Instance,
    objective: Objective,
    starts: &BTreeMap<String, Vec<Rational>>,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let (schedule, connected, nodes) = search(instance, &Rational::zero(), &instance.horizon, config, starts)?;
    Ok(SearchResult {
        value: objective.value(&connected, &instance.horizon),
        schedule,
        connected,
        nodes,
    })
}

/// Largest connected measure inside `[a, b]` any feasible schedule achieves.
pub fn brute_force_within(
    instance: &Instance,
    a: &Rational,
    b: &Rational,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let (schedule, connected, nodes) = search(instance, a, b, config, &BTreeMap::new())?;
    Ok(SearchResult {
        value: connected.clone(),
        schedule,
        connected,
        nodes,
    })
}

/// Exact optimum when no job may be preempted.
pub fn brute_nonpreemptive(
    instance: &Instance,
    objective: Objective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    if let Some(e) = instance.edges.iter().find(|e| e.preemption != Preemption::None) {
        return Err(Error::Precondition(format!(
            "non-preemptive search needs non-preemptable jobs; edge `{}` is {}",
            e.id, e.preemption
        )));
    }
    brute_force(instance, objective, config)
}

/// Exact optimum when jobs may be preempted at integral times only.
///
/// Arbitrarily preemptable jobs are restricted to integral preemption, so
/// the returned schedule is feasible for the instance as given.
pub fn brute_integral_preemptive(
    instance: &Instance,
    objective: Objective,
    config: &SearchConfig,
) -> Result<SearchResult> {
    if let Some(e) = instance.edges.iter().find(|e| e.preemption == Preemption::None) {
        return Err(Error::Precondition(format!(
            "integral-preemption search needs preemptable jobs; edge `{}` is none",
            e.id
        )));
    }
    brute_force(&instance.with_preemption(Preemption::IntegralOnly), objective, config)
}
