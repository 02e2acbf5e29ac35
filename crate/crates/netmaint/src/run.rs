//! Solver dispatch and the machine-readable record of one solver run.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use netmaint_core::approx::approx_max_connectivity;
use netmaint_core::eval::connectivity_profile;
use netmaint_core::oracle::{brute_integral_preemptive, brute_mixed, brute_nonpreemptive, SearchConfig, SearchResult};
use netmaint_core::path::{exact_nonpreemptive_path, mixed_two_approx, solve_path_split};
use netmaint_core::preemptive::solve_preemptive;
use netmaint_core::{Error, Instance, Objective, Rational, Schedule};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::instance_to_json;

/// The solvers reachable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Exact LP method for arbitrarily preemptable jobs.
    Preemptive,
    /// Best of the latest-start candidates for non-preemptable jobs.
    NonpreemptiveApprox,
    /// Splitting of the preemptive optimum on a path.
    PathSplit,
    /// Exact non-preemptive search on a path.
    PathExact,
    /// Separate optimal schedules for preemptable and rigid jobs on a path.
    #[value(name = "mixed-2approx")]
    Mixed2Approx,
    /// Exhaustive search over start times.
    BruteNp,
    /// Exhaustive search over integral preemption.
    BruteIntpmtn,
    /// Exhaustive search over rigid starts with an LP for the rest.
    BruteMixed,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Preemptive => "preemptive",
            Mode::NonpreemptiveApprox => "nonpreemptive-approx",
            Mode::PathSplit => "path-split",
            Mode::PathExact => "path-exact",
            Mode::Mixed2Approx => "mixed-2approx",
            Mode::BruteNp => "brute-np",
            Mode::BruteIntpmtn => "brute-intpmtn",
            Mode::BruteMixed => "brute-mixed",
        }
    }

    /// Whether the mode searches over start times of rigid jobs.
    fn searches_starts(self) -> bool {
        matches!(self, Mode::PathExact | Mode::BruteNp | Mode::BruteMixed)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Objective as accepted by `--objective`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ObjectiveArg {
    Max,
    Min,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Max => Objective::MaxConnectivity,
            ObjectiveArg::Min => Objective::MinDisconnection,
        }
    }
}

/// Settings shared by every solver run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub objective: Objective,
    pub budget: u64,
    /// Repeat start-time searches on the half-integral grid and fail if that
    /// improves the optimum.
    pub paranoia_halfint: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            objective: Objective::MaxConnectivity,
            budget: netmaint_core::oracle::SearchBudget::default().max_nodes,
            paranoia_halfint: false,
        }
    }
}

/// A schedule produced by a solver, with its re-evaluated value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub schedule: Schedule,
    pub value: Rational,
    pub connected_time: Rational,
    pub disconnected_time: Rational,
    pub nodes: Option<u64>,
    /// Solver-specific figures (scores, bounds, partial costs).
    pub details: BTreeMap<String, String>,
}

fn searched(result: SearchResult) -> (Schedule, Option<Rational>, Option<u64>, BTreeMap<String, String>) {
    (result.schedule, Some(result.value), Some(result.nodes), BTreeMap::new())
}

/// Runs `mode` on `instance` and re-evaluates the schedule it returns.
///
/// The value reported by the solver must match the evaluation exactly;
/// a mismatch is reported as an internal error.
pub fn solve(instance: &Instance, mode: Mode, options: &SolveOptions) -> Result<Solved, Error> {
    let objective = options.objective;
    let config = SearchConfig::with_budget(options.budget);
    let (schedule, claimed, nodes, mut details) = match mode {
        Mode::Preemptive => {
            let sol = solve_preemptive(instance, objective)?;
            (sol.schedule, Some(sol.value), None, BTreeMap::new())
        }
        Mode::NonpreemptiveApprox => {
            let res = approx_max_connectivity(instance)?;
            let mut details = BTreeMap::new();
            details.insert("candidate".into(), res.index.to_string());
            details.insert("ell".into(), res.ell().to_string());
            details.insert("reported_score".into(), res.reported_score.to_string());
            let scores: Vec<String> = res.scores.iter().map(|s| s.to_string()).collect();
            details.insert("scores".into(), scores.join(","));
            (res.schedule, None, None, details)
        }
        Mode::PathSplit => {
            let sol = solve_path_split(instance, objective)?;
            let mut details = BTreeMap::new();
            details.insert("active_time".into(), sol.active_time.to_string());
            details.insert("bound".into(), sol.bound.to_string());
            (sol.schedule, Some(sol.value), None, details)
        }
        Mode::PathExact => searched(exact_nonpreemptive_path(instance, objective, &config)?),
        Mode::Mixed2Approx => {
            let res = mixed_two_approx(instance, objective, &config)?;
            let mut details = BTreeMap::new();
            details.insert("preemptive_cost".into(), res.preemptive_cost.to_string());
            details.insert("nonpreemptive_cost".into(), res.nonpreemptive_cost.to_string());
            (res.schedule, Some(res.value), Some(res.nodes), details)
        }
        Mode::BruteNp => searched(brute_nonpreemptive(instance, objective, &config)?),
        Mode::BruteIntpmtn => searched(brute_integral_preemptive(instance, objective, &config)?),
        Mode::BruteMixed => searched(brute_mixed(instance, objective, &config)?),
    };
    let profile = connectivity_profile(instance, &schedule)?;
    let value = objective.value(&profile.connected_time, &instance.horizon);
    if let Some(claimed) = claimed {
        if claimed != value {
            return Err(Error::Internal(format!(
                "{mode} reported {claimed} but its schedule evaluates to {value}"
            )));
        }
    }
    if options.paranoia_halfint && mode.searches_starts() {
        let half = SearchConfig {
            half_integral: true,
            ..config
        };
        let fine = match mode {
            Mode::PathExact => exact_nonpreemptive_path(instance, objective, &half)?,
            Mode::BruteNp => brute_nonpreemptive(instance, objective, &half)?,
            _ => brute_mixed(instance, objective, &half)?,
        };
        let improves = match objective {
            Objective::MaxConnectivity => fine.value > value,
            Objective::MinDisconnection => fine.value < value,
        };
        if improves {
            return Err(Error::Internal(format!(
                "half-integral starts reach {} where integral starts reach {value}",
                fine.value
            )));
        }
        details.insert("half_integral_value".into(), fine.value.to_string());
    }
    Ok(Solved {
        schedule,
        value,
        connected_time: profile.connected_time,
        disconnected_time: profile.disconnected_time,
        nodes,
        details,
    })
}

/// Whether a search finished inside its budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetStatus {
    /// The mode does not search.
    NotApplicable,
    Within,
    Exceeded,
}

/// Machine-readable record of one `solve` run.
///
/// `digest` covers every field except itself and `wall_time_us`, so reruns
/// on the same input produce the same digest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub instance_path: String,
    /// SHA-256 of the canonical instance JSON.
    pub instance_digest: String,
    pub solver: String,
    pub parameters: BTreeMap<String, String>,
    pub objective: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected_time: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disconnected_time: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule_path: Option<String>,
    pub budget_status: BudgetStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
    pub digest: String,
    pub wall_time_us: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// SHA-256 of the canonical JSON of `instance`.
pub fn instance_digest(instance: &Instance) -> String {
    sha256_hex(instance_to_json(instance).as_bytes())
}

impl RunResult {
    /// Digest over the deterministic fields.
    pub fn compute_digest(&self) -> String {
        let mut value = serde_json::to_value(self).expect("run results serialize");
        let map = value.as_object_mut().expect("struct serializes to an object");
        map.remove("digest");
        map.remove("wall_time_us");
        sha256_hex(value.to_string().as_bytes())
    }

    pub fn seal(mut self) -> Self {
        self.digest = self.compute_digest();
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("run results serialize");
        out.push('\n');
        out
    }
}

impl FromStr for RunResult {
    type Err = serde_json::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s)
    }
}
