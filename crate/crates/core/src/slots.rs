//! Fixed-width time slots as bitsets, for the exhaustive searches.
//!
//! With resolution `q`, slot `k` is the half-open interval `[k/q, (k+1)/q)`.
//! Reachability is computed for all slots at once by propagating bitsets
//! along edges until nothing changes.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::rational::Rational;
use crate::schedule::{Interval, IntervalSet};

/// A set of slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct SlotSet {
    words: Vec<u64>,
}

impl SlotSet {
    pub fn empty(slots: usize) -> Self {
        SlotSet {
            words: vec![0; slots.div_ceil(64)],
        }
    }

    /// Slots `start..end`.
    pub fn range(slots: usize, start: usize, end: usize) -> Self {
        let mut s = Self::empty(slots);
        s.insert_range(start, end);
        s
    }

    pub fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn insert_range(&mut self, start: usize, end: usize) {
        for k in start..end {
            self.insert(k);
        }
    }

    pub fn contains(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn union_with(&mut self, other: &SlotSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &SlotSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// The slots as maximal runs, converted to time at resolution `q`.
    pub fn to_intervals(&self, slots: usize, q: i64) -> IntervalSet {
        let mut out = Vec::new();
        let mut k = 0;
        while k < slots {
            if !self.contains(k) {
                k += 1;
                continue;
            }
            let start = k;
            while k < slots && self.contains(k) {
                k += 1;
            }
            out.push(Interval::new(
                Rational::new(start as i64, q),
                Rational::new(k as i64, q),
            ));
        }
        IntervalSet::union_of(out)
    }
}

/// Slots in which the terminals are connected, restricted to `scope`.
///
/// `blocked[e]` holds the slots during which edge `e` is maintained.
pub(crate) fn connected_slots(graph: &Graph, blocked: &[SlotSet], scope: &SlotSet) -> SlotSet {
    let words = scope.words.len();
    let mut reach = vec![vec![0u64; words]; graph.node_count];
    reach[graph.source].copy_from_slice(&scope.words);
    let mut changed = true;
    while changed {
        changed = false;
        for (e, &(u, v)) in graph.ends.iter().enumerate() {
            for w in 0..words {
                let avail = !blocked[e].words[w];
                let ru = reach[u][w];
                let rv = reach[v][w];
                let nu = ru | (rv & avail);
                let nv = rv | (ru & avail);
                if nu != ru || nv != rv {
                    reach[u][w] = nu;
                    reach[v][w] = nv;
                    changed = true;
                }
            }
        }
    }
    SlotSet {
        words: core::mem::take(&mut reach[graph.sink]),
    }
}

/// Converts `t` to a slot index at resolution `q`, if it lies on the grid.
pub(crate) fn slot_of(t: &Rational, q: i64) -> Option<usize> {
    let scaled = t * &Rational::from_integer(q);
    if !scaled.is_integer() || scaled.is_negative() {
        return None;
    }
    scaled.to_i64().map(|k| k as usize)
}
