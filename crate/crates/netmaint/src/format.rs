//! Canonical JSON for instances, schedules and connectivity reports.
//!
//! Every time value is a decimal rational string `"n"` or `"n/d"`, so files
//! round-trip exactly and never contain floating point.

use std::collections::BTreeMap;

use netmaint_core::eval::ConnectivityProfile;
use netmaint_core::schedule::FeasibilityReport;
use netmaint_core::{Edge, Instance, Interval, IntervalSet, Preemption, Rational, Schedule};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    nodes: Vec<String>,
    source: String,
    sink: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    horizon: Option<String>,
    edges: Vec<EdgeFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    u: String,
    v: String,
    release: String,
    deadline: String,
    processing: String,
    preemptable: Flag,
}

/// `"arbitrary" | "integral" | "none"` (and aliases), or a plain boolean.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Flag {
    Bool(bool),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    edges: BTreeMap<String, Vec<[String; 2]>>,
}

fn rational(what: &'static str, field: &str, text: &str) -> Result<Rational> {
    text.parse()
        .map_err(|_| CliError::format(what, format!("`{field}` is not a rational: `{text}`")))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("file structs serialize");
    out.push('\n');
    out
}

/// Canonical instance JSON.
pub fn instance_to_json(instance: &Instance) -> String {
    let file = InstanceFile {
        nodes: instance.nodes.clone(),
        source: instance.source.clone(),
        sink: instance.sink.clone(),
        horizon: Some(instance.horizon.to_string()),
        edges: instance
            .edges
            .iter()
            .map(|e| EdgeFile {
                id: Some(e.id.clone()),
                u: e.u.clone(),
                v: e.v.clone(),
                release: e.release.to_string(),
                deadline: e.deadline.to_string(),
                processing: e.processing.to_string(),
                preemptable: Flag::Text(e.preemption.as_str().to_string()),
            })
            .collect(),
        meta: instance.meta.clone(),
    };
    pretty(&file)
}

/// Parses instance JSON. Missing edge ids become `e{k}` (1-based position);
/// a missing horizon defaults to the largest deadline. The instance is not
/// validated here.
pub fn instance_from_json(text: &str) -> Result<Instance> {
    const WHAT: &str = "instance";
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| CliError::format(WHAT, e.to_string()))?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for (k, e) in file.edges.into_iter().enumerate() {
        let id = e.id.unwrap_or_else(|| format!("e{}", k + 1));
        let preemption = match e.preemptable {
            Flag::Bool(true) => Preemption::Arbitrary,
            Flag::Bool(false) => Preemption::None,
            Flag::Text(t) => Preemption::parse(&t)
                .ok_or_else(|| CliError::format(WHAT, format!("edge `{id}`: unknown preemption `{t}`")))?,
        };
        edges.push(Edge::new(
            id.clone(),
            e.u,
            e.v,
            rational(WHAT, &format!("{id}.release"), &e.release)?,
            rational(WHAT, &format!("{id}.deadline"), &e.deadline)?,
            rational(WHAT, &format!("{id}.processing"), &e.processing)?,
            preemption,
        ));
    }
    let horizon = file.horizon.map(|h| rational(WHAT, "horizon", &h)).transpose()?;
    let mut instance = Instance::new(file.nodes, file.source, file.sink, edges, horizon);
    instance.meta = file.meta;
    Ok(instance)
}

/// Canonical schedule JSON.
pub fn schedule_to_json(schedule: &Schedule) -> String {
    let file = ScheduleFile {
        edges: schedule
            .assignment
            .iter()
            .map(|(id, set)| {
                let pieces = set
                    .intervals()
                    .iter()
                    .map(|i| [i.start.to_string(), i.end.to_string()])
                    .collect();
                (id.clone(), pieces)
            })
            .collect(),
    };
    pretty(&file)
}

/// Parses schedule JSON; intervals of one edge must be disjoint.
pub fn schedule_from_json(text: &str) -> Result<Schedule> {
    const WHAT: &str = "schedule";
    let file: ScheduleFile = serde_json::from_str(text).map_err(|e| CliError::format(WHAT, e.to_string()))?;
    let mut schedule = Schedule::new();
    for (id, pieces) in file.edges {
        let mut intervals = Vec::with_capacity(pieces.len());
        for [a, b] in &pieces {
            let (a, b) = (rational(WHAT, &id, a)?, rational(WHAT, &id, b)?);
            if a > b {
                return Err(CliError::format(WHAT, format!("edge `{id}`: interval [{a}, {b}] is reversed")));
            }
            intervals.push(Interval::new(a, b));
        }
        let set = IntervalSet::new(intervals).map_err(|e| CliError::format(WHAT, format!("edge `{id}`: {e}")))?;
        schedule.set(id, set);
    }
    Ok(schedule)
}

#[derive(Serialize)]
struct ViolationEntry<'a> {
    edge: &'a str,
    reason: &'a str,
}

#[derive(Serialize)]
struct AtomEntry {
    start: String,
    end: String,
    connected: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    feasible: bool,
    violations: Vec<ViolationEntry<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    connected_time: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    disconnected_time: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    atoms: Option<Vec<AtomEntry>>,
}

/// Feasibility and, for feasible schedules, the connectivity profile as JSON.
pub fn report_to_json(
    instance: &Instance,
    feasibility: &FeasibilityReport,
    profile: Option<&ConnectivityProfile>,
) -> String {
    let report = Report {
        feasible: feasibility.is_feasible(),
        violations: feasibility
            .violations
            .iter()
            .map(|v| ViolationEntry {
                edge: &v.edge,
                reason: &v.reason,
            })
            .collect(),
        horizon: profile.map(|_| instance.horizon.to_string()),
        connected_time: profile.map(|p| p.connected_time.to_string()),
        disconnected_time: profile.map(|p| p.disconnected_time.to_string()),
        atoms: profile.map(|p| {
            p.atoms
                .iter()
                .map(|a| AtomEntry {
                    start: a.start.to_string(),
                    end: a.end.to_string(),
                    connected: a.connected,
                })
                .collect()
        }),
    };
    pretty(&report)
}

#[cfg(test)]
mod tests {
    use netmaint_core::gen::gen_fig1;
    use netmaint_core::rational::{q, qi};

    use super::*;

    #[test]
    fn instance_round_trip() {
        let inst = gen_fig1(Preemption::IntegralOnly);
        let text = instance_to_json(&inst);
        let back = instance_from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(instance_to_json(&back), text);
        assert!(text.contains("\"preemptable\": \"integral\""));
    }

    #[test]
    fn instance_defaults() {
        let text = r#"{"nodes":["s","t"],"source":"s","sink":"t",
            "edges":[{"u":"s","v":"t","release":"1/2","deadline":"3","processing":"1","preemptable":true}]}"#;
        let inst = instance_from_json(text).unwrap();
        assert_eq!(inst.edges[0].id, "e1");
        assert_eq!(inst.horizon, qi(3));
        assert_eq!(inst.edges[0].release, q(1, 2));
        assert_eq!(inst.edges[0].preemption, Preemption::Arbitrary);
    }

    #[test]
    fn instance_errors() {
        assert!(instance_from_json("{").is_err());
        let bad_rational = r#"{"nodes":[],"source":"s","sink":"t",
            "edges":[{"u":"s","v":"t","release":"0.5","deadline":"3","processing":"1","preemptable":"none"}]}"#;
        assert!(instance_from_json(bad_rational).is_err());
        let bad_mode = bad_rational.replace("0.5", "0").replace("\"none\"", "\"sometimes\"");
        assert!(instance_from_json(&bad_mode).is_err());
        let unknown = r#"{"nodes":[],"source":"s","sink":"t","edges":[],"colour":"red"}"#;
        assert!(instance_from_json(unknown).is_err());
    }

    #[test]
    fn schedule_round_trip() {
        let text = "{\"edges\":{\"e1\":[[\"0\",\"1/2\"],[\"1\",\"3/2\"]],\"e2\":[]}}";
        let s = schedule_from_json(text).unwrap();
        assert_eq!(s.get("e1").unwrap().measure(), qi(1));
        let canonical = schedule_to_json(&s);
        assert_eq!(schedule_from_json(&canonical).unwrap(), s);
        assert_eq!(schedule_to_json(&schedule_from_json(&canonical).unwrap()), canonical);
    }

    #[test]
    fn schedule_errors() {
        assert!(schedule_from_json("{\"edges\":{\"e1\":[[\"2\",\"1\"]]}}").is_err());
        assert!(schedule_from_json("{\"edges\":{\"e1\":[[\"0\",\"2\"],[\"1\",\"3\"]]}}").is_err());
        assert!(schedule_from_json("{\"edges\":{\"e1\":[[\"0\"]]}}").is_err());
    }
}
