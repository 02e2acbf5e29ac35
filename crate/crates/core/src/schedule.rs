//! Maintenance schedules and their feasibility.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::instance::{Instance, Preemption};
use crate::rational::Rational;

/// A closed interval `[start, end]` with `start ≤ end`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: Rational,
    pub end: Rational,
}

impl Interval {
    /// # Panics
    /// Panics when `start > end`.
    pub fn new(start: Rational, end: Rational) -> Self {
        assert!(start <= end, "interval start {start} after end {end}");
        Interval { start, end }
    }

    pub fn len(&self) -> Rational {
        &self.end - &self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Half-open membership `start ≤ t < end`, the availability convention.
    pub fn covers(&self, t: &Rational) -> bool {
        &self.start <= t && t < &self.end
    }
}

/// Sorted, interior-disjoint intervals.
///
/// Construction drops zero-length intervals and merges abutting ones, so two
/// sets describing the same maintenance time compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

/// Returned when intervals passed to [`IntervalSet::new`] overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapError {
    pub first: Interval,
    pub second: Interval,
}

impl fmt::Display for OverlapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "intervals [{}, {}] and [{}, {}] overlap",
            self.first.start, self.first.end, self.second.start, self.second.end
        )
    }
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Normalizes `intervals`; rejects pairs with overlapping interiors.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self, OverlapError> {
        intervals.retain(|i| !i.is_empty());
        intervals.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match out.last_mut() {
                Some(last) if iv.start < last.end => {
                    return Err(OverlapError {
                        first: last.clone(),
                        second: iv,
                    })
                }
                Some(last) if iv.start == last.end => last.end = iv.end,
                _ => out.push(iv),
            }
        }
        Ok(IntervalSet { intervals: out })
    }

    /// A set holding the single interval `[start, end]`.
    pub fn single(start: Rational, end: Rational) -> Self {
        Self::new(alloc::vec![Interval::new(start, end)]).expect("one interval never overlaps")
    }

    /// Union of possibly overlapping intervals.
    pub fn union_of(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|i| !i.is_empty());
        intervals.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match out.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total length.
    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(Interval::len).sum()
    }

    /// Half-open membership of `t` in some interval.
    pub fn covers(&self, t: &Rational) -> bool {
        self.intervals.iter().any(|i| i.covers(t))
    }

    /// Measure of the intersection with `[a, b]`.
    pub fn measure_within(&self, a: &Rational, b: &Rational) -> Rational {
        let mut total = Rational::zero();
        for iv in &self.intervals {
            let lo = Rational::max_of(&iv.start, a);
            let hi = Rational::min_of(&iv.end, b);
            if lo < hi {
                total += hi - lo;
            }
        }
        total
    }

    /// The parts of `[a, b]` not covered by this set, in order.
    pub fn gaps_within(&self, a: &Rational, b: &Rational) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut cursor = a.clone();
        for iv in &self.intervals {
            if iv.end <= cursor {
                continue;
            }
            if &iv.start >= b {
                break;
            }
            if iv.start > cursor {
                out.push(Interval::new(cursor.clone(), iv.start.clone()));
            }
            cursor = iv.end.clone();
        }
        if &cursor < b {
            out.push(Interval::new(cursor, b.clone()));
        }
        out
    }
}

/// Maintenance intervals per edge id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schedule {
    pub assignment: BTreeMap<String, IntervalSet>,
}

impl Schedule {
    pub fn new() -> Self {
        Self::default()
    }

    /// An empty entry for every edge of `instance`.
    pub fn empty_for(instance: &Instance) -> Self {
        let mut s = Self::new();
        for e in &instance.edges {
            s.assignment.insert(e.id.clone(), IntervalSet::empty());
        }
        s
    }

    pub fn set(&mut self, edge: impl Into<String>, intervals: IntervalSet) {
        self.assignment.insert(edge.into(), intervals);
    }

    /// Intervals of `edge`; a missing entry means no maintenance.
    pub fn get(&self, edge: &str) -> Option<&IntervalSet> {
        self.assignment.get(edge)
    }

    /// Every interval endpoint of the schedule.
    pub fn endpoints(&self) -> impl Iterator<Item = &Rational> {
        self.assignment
            .values()
            .flat_map(|s| s.intervals().iter().flat_map(|i| [&i.start, &i.end]))
    }
}

/// One violated feasibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityViolation {
    pub edge: String,
    pub reason: String,
}

/// Result of [`check_feasible`]; feasible exactly when there are no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub violations: Vec<FeasibilityViolation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, edge: &str, reason: impl Into<String>) {
        self.violations.push(FeasibilityViolation {
            edge: String::from(edge),
            reason: reason.into(),
        });
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(crate::Error::InfeasibleSchedule(self))
        }
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("feasible");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.edge, v.reason)?;
        }
        Ok(())
    }
}

/// Checks windows, processing totals, contiguity and integrality per edge.
///
/// A missing entry is read as "no maintenance", which is only feasible for
/// zero-processing jobs.
pub fn check_feasible(instance: &Instance, schedule: &Schedule) -> FeasibilityReport {
    let mut report = FeasibilityReport::default();
    for id in schedule.assignment.keys() {
        if instance.edge(id).is_none() {
            report.push(id, "unknown edge");
        }
    }
    let empty = IntervalSet::empty();
    for e in &instance.edges {
        let set = schedule.get(&e.id).unwrap_or(&empty);
        if set
            .intervals()
            .iter()
            .any(|iv| iv.start < e.release || iv.end > e.deadline)
        {
            report.push(&e.id, "interval outside window");
        }
        let total = set.measure();
        if total != e.processing {
            report.push(
                &e.id,
                format!(
                    "maintenance time {total} differs from processing time {}",
                    e.processing
                ),
            );
        }
        match e.preemption {
            Preemption::None if set.len() > 1 => report.push(&e.id, "not contiguous"),
            Preemption::IntegralOnly
                if set
                    .intervals()
                    .iter()
                    .any(|iv| !iv.start.is_integer() || !iv.end.is_integer()) =>
            {
                report.push(&e.id, "non-integral preemption point")
            }
            _ => {}
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceBuilder;
    use crate::rational::{q, qi};

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b)
    }

    fn one_edge(mode: Preemption) -> Instance {
        InstanceBuilder::new()
            .int_edge("s", "t", 0, 2, 1, mode)
            .build("s", "t")
    }

    #[test]
    fn interval_set_normalizes() {
        let set = IntervalSet::new(alloc::vec![
            iv(qi(1), qi(2)),
            iv(qi(0), qi(1)),
            iv(qi(3), qi(3)),
            iv(qi(4), qi(5)),
        ])
        .unwrap();
        assert_eq!(set.intervals(), &[iv(qi(0), qi(2)), iv(qi(4), qi(5))]);
        assert_eq!(set.measure(), qi(3));
        assert!(IntervalSet::new(alloc::vec![iv(qi(0), qi(2)), iv(qi(1), qi(3))]).is_err());
    }

    #[test]
    fn gaps_and_measure_within() {
        let set = IntervalSet::new(alloc::vec![iv(qi(1), qi(2)), iv(qi(3), qi(5))]).unwrap();
        assert_eq!(
            set.gaps_within(&qi(0), &qi(4)),
            [iv(qi(0), qi(1)), iv(qi(2), qi(3))]
        );
        assert_eq!(set.gaps_within(&qi(3), &qi(4)), []);
        assert_eq!(set.measure_within(&q(3, 2), &qi(4)), q(3, 2));
        let union = IntervalSet::union_of(alloc::vec![iv(qi(0), qi(2)), iv(qi(1), qi(3))]);
        assert_eq!(union.measure(), qi(3));
    }

    #[test]
    fn feasible_single_interval() {
        let inst = one_edge(Preemption::Arbitrary);
        let mut s = Schedule::new();
        s.set("e1", IntervalSet::single(qi(0), qi(1)));
        assert!(check_feasible(&inst, &s).is_feasible());
    }

    fn split_schedule() -> Schedule {
        let mut s = Schedule::new();
        s.set(
            "e1",
            IntervalSet::new(alloc::vec![iv(qi(0), q(1, 2)), iv(qi(1), q(3, 2))]).unwrap(),
        );
        s
    }

    #[test]
    fn non_contiguous_is_reported() {
        let report = check_feasible(&one_edge(Preemption::None), &split_schedule());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].reason, "not contiguous");
    }

    #[test]
    fn non_integral_is_reported() {
        let report = check_feasible(&one_edge(Preemption::IntegralOnly), &split_schedule());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].reason, "non-integral preemption point");
        assert!(check_feasible(&one_edge(Preemption::Arbitrary), &split_schedule()).is_feasible());
    }

    #[test]
    fn window_and_total_are_checked() {
        let inst = one_edge(Preemption::Arbitrary);
        let mut s = Schedule::new();
        s.set("e1", IntervalSet::single(q(3, 2), q(5, 2)));
        s.set("ghost", IntervalSet::empty());
        let reasons: Vec<_> = check_feasible(&inst, &s)
            .violations
            .into_iter()
            .map(|v| v.reason)
            .collect();
        assert!(reasons.contains(&String::from("interval outside window")));
        assert!(reasons.contains(&String::from("unknown edge")));
        let missing = check_feasible(&inst, &Schedule::new());
        assert!(!missing.is_feasible());
    }
}
