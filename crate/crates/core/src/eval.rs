//! Connectivity evaluation by an event sweep over the schedule.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::rational::Rational;
use crate::schedule::{check_feasible, Schedule};

/// A maximal piece of `[0, T]` on which the set of maintained edges is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub start: Rational,
    pub end: Rational,
    pub connected: bool,
}

/// Connectivity of the terminals over `[0, T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityProfile {
    pub atoms: Vec<Atom>,
    pub connected_time: Rational,
    pub disconnected_time: Rational,
}

impl ConnectivityProfile {
    /// Connected measure inside `[a, b]`.
    pub fn connected_within(&self, a: &Rational, b: &Rational) -> Rational {
        let mut total = Rational::zero();
        for atom in self.atoms.iter().filter(|x| x.connected) {
            let lo = Rational::max_of(&atom.start, a);
            let hi = Rational::min_of(&atom.end, b);
            if lo < hi {
                total += hi - lo;
            }
        }
        total
    }
}

/// Profile of a feasible schedule; infeasible schedules are rejected.
pub fn connectivity_profile(instance: &Instance, schedule: &Schedule) -> Result<ConnectivityProfile> {
    check_feasible(instance, schedule).into_result()?;
    sweep(instance, schedule)
}

/// Connected measure of a feasible schedule.
pub fn connected_time(instance: &Instance, schedule: &Schedule) -> Result<Rational> {
    Ok(connectivity_profile(instance, schedule)?.connected_time)
}

/// Disconnected measure of a feasible schedule.
pub fn disconnected_time(instance: &Instance, schedule: &Schedule) -> Result<Rational> {
    Ok(connectivity_profile(instance, schedule)?.disconnected_time)
}

/// Profile of an arbitrary assignment, without the feasibility check.
///
/// Maintenance is half-open: an interval `[a, b]` blocks its edge on `[a, b)`.
/// Connectivity is decided at the midpoint of each atom between consecutive
/// event points; event points outside `[0, T]` are ignored.
pub fn sweep(instance: &Instance, schedule: &Schedule) -> Result<ConnectivityProfile> {
    let graph = Graph::new(instance)?;
    let horizon = &instance.horizon;
    let zero = Rational::zero();
    let mut events: BTreeSet<Rational> = BTreeSet::new();
    events.insert(zero.clone());
    events.insert(horizon.clone());
    for t in schedule.endpoints() {
        if &zero < t && t < horizon {
            events.insert(t.clone());
        }
    }
    let events: Vec<Rational> = events.into_iter().collect();
    let sets: Vec<&[crate::schedule::Interval]> = instance
        .edges
        .iter()
        .map(|e| schedule.get(&e.id).map(|s| s.intervals()).unwrap_or(&[]))
        .collect();
    // Per-edge cursor to the first interval that may still cover the sweep.
    let mut cursor = vec![0usize; sets.len()];
    let mut blocked = vec![false; sets.len()];
    let mut atoms = Vec::with_capacity(events.len().saturating_sub(1));
    let mut connected_total = Rational::zero();
    let two = Rational::from_integer(2);
    for w in events.windows(2) {
        let mid = (&w[0] + &w[1]) / &two;
        for (k, ivs) in sets.iter().enumerate() {
            while cursor[k] < ivs.len() && ivs[cursor[k]].end <= mid {
                cursor[k] += 1;
            }
            blocked[k] = cursor[k] < ivs.len() && ivs[cursor[k]].covers(&mid);
        }
        let connected = graph.connected(|e| !blocked[e]);
        if connected {
            connected_total += &w[1] - &w[0];
        }
        atoms.push(Atom {
            start: w[0].clone(),
            end: w[1].clone(),
            connected,
        });
    }
    if horizon.is_negative() {
        return Err(Error::Precondition(alloc::string::String::from("negative horizon")));
    }
    Ok(ConnectivityProfile {
        atoms,
        disconnected_time: horizon - &connected_total,
        connected_time: connected_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceBuilder, Preemption};
    use crate::rational::{q, qi};
    use crate::schedule::{Interval, IntervalSet};
    use proptest::prelude::*;

    fn path(jobs: &[(i64, i64, i64)]) -> Instance {
        let mut b = InstanceBuilder::new();
        for (k, &(r, d, p)) in jobs.iter().enumerate() {
            let u = alloc::format!("v{k}");
            let v = alloc::format!("v{}", k + 1);
            b.int_edge(u, v, r, d, p, Preemption::Arbitrary);
        }
        b.build("v0", alloc::format!("v{}", jobs.len()))
    }

    #[test]
    fn zero_processing_is_always_connected() {
        let inst = path(&[(0, 3, 0), (1, 3, 0)]);
        let p = connectivity_profile(&inst, &Schedule::empty_for(&inst)).unwrap();
        assert_eq!(p.connected_time, qi(3));
        assert_eq!(p.disconnected_time, qi(0));
    }

    #[test]
    fn single_edge_blocks_its_processing_time() {
        let inst = path(&[(0, 5, 2)]);
        let mut s = Schedule::new();
        s.set("e1", IntervalSet::single(qi(0), qi(2)));
        assert_eq!(disconnected_time(&inst, &s).unwrap(), qi(2));
        assert_eq!(connected_time(&inst, &s).unwrap(), qi(3));
    }

    #[test]
    fn splitting_an_interval_changes_nothing() {
        let inst = path(&[(0, 4, 2)]);
        let mut whole = Schedule::new();
        whole.set("e1", IntervalSet::single(qi(1), qi(3)));
        let mut split = Schedule::new();
        split.set(
            "e1",
            IntervalSet::new(alloc::vec![
                Interval::new(qi(1), q(3, 2)),
                Interval::new(q(3, 2), qi(3)),
            ])
            .unwrap(),
        );
        assert_eq!(
            connectivity_profile(&inst, &whole).unwrap(),
            connectivity_profile(&inst, &split).unwrap()
        );
    }

    #[test]
    fn rejects_infeasible() {
        let inst = path(&[(0, 5, 2)]);
        assert!(matches!(
            connectivity_profile(&inst, &Schedule::new()),
            Err(Error::InfeasibleSchedule(_))
        ));
    }

    #[test]
    fn parallel_routes_need_both_blocked() {
        let inst = InstanceBuilder::new()
            .int_edge("s", "a", 0, 4, 2, Preemption::Arbitrary)
            .int_edge("a", "t", 0, 4, 0, Preemption::Arbitrary)
            .int_edge("s", "b", 0, 4, 2, Preemption::Arbitrary)
            .int_edge("b", "t", 0, 4, 0, Preemption::Arbitrary)
            .build("s", "t");
        let mut s = Schedule::empty_for(&inst);
        s.set("e1", IntervalSet::single(qi(0), qi(2)));
        s.set("e3", IntervalSet::single(qi(1), qi(3)));
        let p = connectivity_profile(&inst, &s).unwrap();
        assert_eq!(p.disconnected_time, qi(1));
        assert_eq!(p.connected_within(&qi(0), &qi(2)), qi(1));
        assert_eq!(p.atoms.len(), 4);
    }

    fn assignment(blocks: &[(usize, i64, i64)], den: i64) -> Schedule {
        let mut per: alloc::collections::BTreeMap<usize, Vec<Interval>> = Default::default();
        for &(e, a, b) in blocks {
            per.entry(e)
                .or_default()
                .push(Interval::new(q(a, den), q(a + b, den)));
        }
        let mut s = Schedule::new();
        for (e, ivs) in per {
            s.set(alloc::format!("e{}", e + 1), IntervalSet::union_of(ivs));
        }
        s
    }

    fn small_graph() -> Instance {
        InstanceBuilder::new()
            .int_edge("s", "a", 0, 4, 0, Preemption::Arbitrary)
            .int_edge("a", "t", 0, 4, 0, Preemption::Arbitrary)
            .int_edge("s", "b", 0, 4, 0, Preemption::Arbitrary)
            .int_edge("b", "t", 0, 4, 0, Preemption::Arbitrary)
            .int_edge("a", "b", 0, 4, 0, Preemption::Arbitrary)
            .build("s", "t")
    }

    proptest! {
        // Slot-by-slot evaluation agrees with the sweep for grids of step 1/q.
        #[test]
        fn agrees_with_slot_evaluator(
            den in 1i64..=4,
            raw in proptest::collection::vec((0usize..5, 0i64..16, 1i64..8), 0..8),
        ) {
            let inst = small_graph();
            let slots = 4 * den;
            let blocks: Vec<_> = raw
                .into_iter()
                .map(|(e, a, b)| (e, a % slots, b.min(slots - a % slots)))
                .collect();
            let s = assignment(&blocks, den);
            let profile = sweep(&inst, &s).unwrap();
            let graph = Graph::new(&inst).unwrap();
            let mut connected = 0i64;
            for slot in 0..slots {
                let mid = q(2 * slot + 1, 2 * den);
                let blocked: Vec<bool> = inst
                    .edges
                    .iter()
                    .map(|e| s.get(&e.id).is_some_and(|set| set.covers(&mid)))
                    .collect();
                if graph.connected(|e| !blocked[e]) {
                    connected += 1;
                }
            }
            prop_assert_eq!(profile.connected_time.clone(), q(connected, den));
            prop_assert_eq!(&profile.connected_time + &profile.disconnected_time, qi(4));
        }

        // Extra maintenance never increases connectivity.
        #[test]
        fn adding_maintenance_is_monotone(
            raw in proptest::collection::vec((0usize..5, 0i64..8, 1i64..4), 0..6),
            extra in (0usize..5, 0i64..8, 1i64..4),
        ) {
            let inst = small_graph();
            let clamp = |(e, a, b): (usize, i64, i64)| (e, a, b.min(8 - a));
            let blocks: Vec<_> = raw.into_iter().map(clamp).collect();
            let base = sweep(&inst, &assignment(&blocks, 2)).unwrap().connected_time;
            let mut more = blocks.clone();
            more.push(clamp(extra));
            let after = sweep(&inst, &assignment(&more, 2)).unwrap().connected_time;
            prop_assert!(after <= base);

        }
    }
}
