//! Problem instances: an undirected network with two terminals and one
//! maintenance job per edge.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

/// How a maintenance job may be interrupted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preemption {
    /// The job may be split at arbitrary (rational) time points.
    Arbitrary,
    /// The job may only be interrupted at integer time points.
    IntegralOnly,
    /// The job runs in one contiguous block.
    None,
}

impl Preemption {
    /// Canonical lowercase name used in files and on the command line.
    pub fn as_str(self) -> &'static str {
        match self {
            Preemption::Arbitrary => "arbitrary",
            Preemption::IntegralOnly => "integral",
            Preemption::None => "none",
        }
    }

    /// Parses the canonical name or one of its common aliases.
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "arbitrary" | "preemptive" | "true" => Some(Preemption::Arbitrary),
            "integral" | "integral_only" | "integral-only" | "integralonly" => {
                Some(Preemption::IntegralOnly)
            }
            "none" | "nonpreemptive" | "non-preemptive" | "false" => Some(Preemption::None),
            _ => None,
        }
    }
}

impl fmt::Display for Preemption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An undirected edge together with its maintenance job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub u: String,
    pub v: String,
    pub release: Rational,
    pub deadline: Rational,
    pub processing: Rational,
    pub preemption: Preemption,
}

impl Edge {
    pub fn new(
        id: impl Into<String>,
        u: impl Into<String>,
        v: impl Into<String>,
        release: Rational,
        deadline: Rational,
        processing: Rational,
        preemption: Preemption,
    ) -> Self {
        Edge {
            id: id.into(),
            u: u.into(),
            v: v.into(),
            release,
            deadline,
            processing,
            preemption,
        }
    }

    /// Length of the window `[release, deadline]`.
    pub fn window_len(&self) -> Rational {
        &self.deadline - &self.release
    }

    /// Latest time a contiguous run of the job can start.
    pub fn latest_start(&self) -> Rational {
        &self.deadline - &self.processing
    }

    /// A tight job admits exactly one placement.
    pub fn is_tight(&self) -> bool {
        self.processing == self.window_len()
    }

    /// Endpoints ordered lexicographically, identifying the unordered pair.
    pub fn key(&self) -> (&str, &str) {
        if self.u <= self.v {
            (&self.u, &self.v)
        } else {
            (&self.v, &self.u)
        }
    }

    fn has_integer_data(&self) -> bool {
        self.release.is_integer() && self.deadline.is_integer() && self.processing.is_integer()
    }
}

/// A maintenance scheduling instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub nodes: Vec<String>,
    pub source: String,
    pub sink: String,
    pub edges: Vec<Edge>,
    pub horizon: Rational,
    /// Free-form provenance notes, e.g. generator parameters or padding.
    pub meta: BTreeMap<String, String>,
}

impl Instance {
    /// Builds an instance; a missing horizon defaults to the largest deadline.
    pub fn new(
        nodes: Vec<String>,
        source: impl Into<String>,
        sink: impl Into<String>,
        edges: Vec<Edge>,
        horizon: Option<Rational>,
    ) -> Self {
        let horizon = horizon.unwrap_or_else(|| default_horizon(&edges));
        Instance {
            nodes,
            source: source.into(),
            sink: sink.into(),
            edges,
            horizon,
            meta: BTreeMap::new(),
        }
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// True when every release, deadline, processing time and the horizon are integers.
    pub fn has_integer_data(&self) -> bool {
        self.horizon.is_integer() && self.edges.iter().all(Edge::has_integer_data)
    }

    /// True when some unordered node pair carries more than one edge.
    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        !self.edges.iter().all(|e| seen.insert(e.key()))
    }

    /// True when every job uses the given preemption regime.
    pub fn all_jobs(&self, mode: Preemption) -> bool {
        self.edges.iter().all(|e| e.preemption == mode)
    }

    /// Copy of the instance with every job switched to `mode`.
    pub fn with_preemption(&self, mode: Preemption) -> Instance {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.preemption = mode;
        }
        out
    }
}

/// Largest deadline, or zero for an instance without edges.
pub fn default_horizon(edges: &[Edge]) -> Rational {
    edges
        .iter()
        .map(|e| &e.deadline)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero)
}

/// Incremental construction of instances with sequential edge ids `e1, e2, ...`.
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    nodes: Vec<String>,
    known: BTreeSet<String>,
    edges: Vec<Edge>,
    horizon: Option<Rational>,
    meta: BTreeMap<String, String>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a node; declaring an existing node is a no-op.
    pub fn node(&mut self, name: impl Into<String>) -> &mut Self {
        let name = name.into();
        if self.known.insert(name.clone()) {
            self.nodes.push(name);
        }
        self
    }

    /// Adds an edge with id `e{k}` where `k` is its 1-based position.
    pub fn edge(
        &mut self,
        u: impl Into<String>,
        v: impl Into<String>,
        release: Rational,
        deadline: Rational,
        processing: Rational,
        preemption: Preemption,
    ) -> &mut Self {
        let id = format!("e{}", self.edges.len() + 1);
        self.named_edge(id, u, v, release, deadline, processing, preemption)
    }

    /// Adds an edge with an explicit id.
    #[allow(clippy::too_many_arguments)]
    pub fn named_edge(
        &mut self,
        id: impl Into<String>,
        u: impl Into<String>,
        v: impl Into<String>,
        release: Rational,
        deadline: Rational,
        processing: Rational,
        preemption: Preemption,
    ) -> &mut Self {
        let (u, v) = (u.into(), v.into());
        self.node(u.clone());
        self.node(v.clone());
        self.edges
            .push(Edge::new(id, u, v, release, deadline, processing, preemption));
        self
    }

    /// Convenience for integer data: `edge(u, v, r, d, p, mode)`.
    pub fn int_edge(
        &mut self,
        u: impl Into<String>,
        v: impl Into<String>,
        release: i64,
        deadline: i64,
        processing: i64,
        preemption: Preemption,
    ) -> &mut Self {
        self.edge(
            u,
            v,
            Rational::from_integer(release),
            Rational::from_integer(deadline),
            Rational::from_integer(processing),
            preemption,
        )
    }

    pub fn horizon(&mut self, horizon: Rational) -> &mut Self {
        self.horizon = Some(horizon);
        self
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Finishes the instance with the given terminals (declared if absent).
    pub fn build(&mut self, source: impl Into<String>, sink: impl Into<String>) -> Instance {
        let (source, sink) = (source.into(), sink.into());
        self.node(source.clone());
        self.node(sink.clone());
        let mut inst = Instance::new(
            self.nodes.clone(),
            source,
            sink,
            self.edges.clone(),
            self.horizon.clone(),
        );
        inst.meta = self.meta.clone();
        inst
    }
}

/// One violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Edge id, node id or field name the violation refers to.
    pub subject: String,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.reason)
    }
}

/// Result of [`validate`]; valid exactly when there are no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, subject: impl Into<String>, reason: impl Into<String>) {
        self.violations.push(Violation {
            subject: subject.into(),
            reason: reason.into(),
        });
    }

    /// Turns the report into a `Result`.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::InvalidInstance(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Reports every violated structural invariant of `instance`.
///
/// Parallel edges are allowed here; solvers remove them with
/// [`normalize_parallel_edges`].
pub fn validate(instance: &Instance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut nodes = BTreeSet::new();
    for n in &instance.nodes {
        if !nodes.insert(n.as_str()) {
            report.push(n.clone(), "duplicate node id");
        }
    }
    if instance.source == instance.sink {
        report.push("source", "terminals coincide");
    }
    if !nodes.contains(instance.source.as_str()) {
        report.push("source", format!("unknown node `{}`", instance.source));
    }
    if !nodes.contains(instance.sink.as_str()) {
        report.push("sink", format!("unknown node `{}`", instance.sink));
    }
    if instance.horizon.is_negative() {
        report.push("horizon", "negative horizon");
    }
    let mut ids = BTreeSet::new();
    for e in &instance.edges {
        let id = e.id.clone();
        if !ids.insert(e.id.as_str()) {
            report.push(id.clone(), "duplicate edge id");
        }
        for end in [&e.u, &e.v] {
            if !nodes.contains(end.as_str()) {
                report.push(id.clone(), format!("unknown endpoint `{end}`"));
            }
        }
        if e.u == e.v {
            report.push(id.clone(), "self-loop");
        }
        if e.release.is_negative() {
            report.push(id.clone(), "negative release date");
        }
        if e.release > e.deadline {
            report.push(id.clone(), "release after deadline");
        }
        if e.processing.is_negative() {
            report.push(id.clone(), "negative processing time");
        } else if e.release <= e.deadline && e.processing > e.window_len() {
            report.push(id.clone(), "processing exceeds window");
        }
        if e.deadline > instance.horizon {
            report.push(id, "deadline beyond horizon");
        }
    }
    report
}

/// Fresh node name not present in `taken`, derived from `base`.
fn fresh_name(base: &str, taken: &mut BTreeSet<String>) -> String {
    let mut candidate = String::from(base);
    let mut k = 1usize;
    while taken.contains(&candidate) {
        k += 1;
        candidate = format!("{base}{k}");
    }
    taken.insert(candidate.clone());
    candidate
}

/// Replaces every parallel edge beyond the first between a node pair by a
/// two-edge path through a fresh node.
///
/// The half incident to the lexicographically smaller endpoint keeps the
/// original id and job; the other half carries a zero-processing job over
/// `[0, T]`, which never maintains and so never affects connectivity.
pub fn normalize_parallel_edges(instance: &Instance) -> Instance {
    if !instance.has_parallel_edges() {
        return instance.clone();
    }
    let mut node_names: BTreeSet<String> = instance.nodes.iter().cloned().collect();
    let mut edge_ids: BTreeSet<String> = instance.edges.iter().map(|e| e.id.clone()).collect();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    let mut out = instance.clone();
    out.edges.clear();
    for e in &instance.edges {
        let (a, b) = e.key();
        let key = (a.to_string(), b.to_string());
        if seen.insert(key.clone()) {
            out.edges.push(e.clone());
            continue;
        }
        let mid = fresh_name(&format!("{}~mid", e.id), &mut node_names);
        out.nodes.push(mid.clone());
        let link_id = fresh_name(&format!("{}~link", e.id), &mut edge_ids);
        let mut job_half = e.clone();
        job_half.u = key.0.clone();
        job_half.v = mid.clone();
        out.edges.push(job_half);
        out.edges.push(Edge::new(
            link_id,
            mid,
            key.1,
            Rational::zero(),
            instance.horizon.clone(),
            Rational::zero(),
            e.preemption,
        ));
    }
    out
}

/// `{0} ∪ {r_e, d_e}`, sorted and without duplicates.
pub fn relevant_time_points(instance: &Instance) -> Vec<Rational> {
    let mut points = BTreeSet::new();
    points.insert(Rational::zero());
    for e in &instance.edges {
        points.insert(e.release.clone());
        points.insert(e.deadline.clone());
    }
    points.into_iter().collect()
}
