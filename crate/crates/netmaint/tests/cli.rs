//! End-to-end runs of the `netmaint` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use netmaint::format::{instance_from_json, instance_to_json, schedule_from_json, schedule_to_json};
use netmaint::run::RunResult;
use netmaint::{EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_PRECONDITION, EXIT_VALIDATION};
use netmaint_core::{Instance, InstanceBuilder, Preemption, Schedule};
use serde_json::Value;

/// A fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("netmaint-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn netmaint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netmaint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &Path, name: &str, family: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["generate"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", path_str(&path)]);
    let out = netmaint(&args);
    assert_eq!(code(&out), EXIT_OK, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write_instance(dir: &Path, name: &str, instance: &Instance) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, instance_to_json(instance)).unwrap();
    path
}

fn solve_json(args: &[&str]) -> (i32, RunResult) {
    let mut full = vec!["solve"];
    full.extend_from_slice(args);
    let out = netmaint(&full);
    let result: RunResult = stdout(&out).parse().expect("run result JSON");
    (code(&out), result)
}

#[test]
fn generate_solve_eval_round_trip() {
    let dir = scratch("round-trip");
    let inst = generate(&dir, "fig1.json", &["fig1"]);
    let sched = dir.join("fig1.schedule.json");
    let (status, result) = solve_json(&["preemptive", path_str(&inst), "--schedule-out", path_str(&sched)]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(result.value.as_deref(), Some("2"));
    assert_eq!(result.exit_code, EXIT_OK);
    assert_eq!(result.digest, result.compute_digest());

    let out = netmaint(&["eval", path_str(&inst), path_str(&sched), "--format", "json"]);
    assert_eq!(code(&out), EXIT_OK);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["feasible"], true);
    assert_eq!(report["connected_time"], "2");
    assert_eq!(report["horizon"], "2");

    let text = netmaint(&["eval", path_str(&inst), path_str(&sched)]);
    assert_eq!(code(&text), EXIT_OK);
    assert!(stdout(&text).contains("connected 2 / disconnected 0 / horizon 2"));
    let svg = netmaint(&["eval", path_str(&inst), path_str(&sched), "--format", "svg"]);
    assert!(stdout(&svg).starts_with("<svg"));
}

#[test]
fn solver_modes_on_small_families() {
    let dir = scratch("modes");
    let integral = generate(&dir, "fig1-int.json", &["fig1", "--integral"]);
    assert_eq!(solve_json(&["brute-intpmtn", path_str(&integral)]).1.value.as_deref(), Some("1"));
    let pop = generate(&dir, "pop.json", &["unbounded-pop"]);
    assert_eq!(solve_json(&["path-exact", path_str(&pop)]).1.value.as_deref(), Some("0"));
    assert_eq!(solve_json(&["nonpreemptive-approx", path_str(&pop)]).0, EXIT_OK);
    let (status, split) = solve_json(&["path-split", path_str(&pop), "--objective", "min"]);
    assert_eq!(status, EXIT_OK);
    assert!(split.details.contains_key("bound"), "{:?}", split.details);
    let part = generate(&dir, "part.json", &["partition", "--numbers", "1,1"]);
    assert_eq!(solve_json(&["brute-mixed", path_str(&part), "--objective", "min"]).1.value.as_deref(), Some("12"));
    assert_eq!(solve_json(&["mixed-2approx", path_str(&part), "--objective", "min"]).0, EXIT_OK);
    let cnf = dir.join("f.cnf");
    fs::write(&cnf, "p cnf 3 1\n1 -2 3 0\n").unwrap();
    let gadget = generate(&dir, "gadget.json", &["sat-gadget", "--cnf", path_str(&cnf)]);
    assert_eq!(solve_json(&["brute-np", path_str(&gadget), "--objective", "min"]).1.value.as_deref(), Some("0"));
    generate(&dir, "paths.json", &["disjoint-paths", "--cnf", path_str(&cnf)]);
    let lower = generate(&dir, "lower.json", &["pop-lower", "--levels", "2", "--scale", "2"]);
    let (status, half) = solve_json(&["path-exact", path_str(&lower), "--objective", "min", "--paranoia-halfint"]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(half.value.as_deref(), Some("3"));
    assert_eq!(half.details.get("half_integral_value").map(String::as_str), Some("3"));
}

#[test]
fn exit_codes() {
    let dir = scratch("exit-codes");
    let fig = generate(&dir, "fig1.json", &["fig1"]);
    let (status, result) = solve_json(&["path-exact", path_str(&fig)]);
    assert_eq!((status, result.exit_code), (EXIT_PRECONDITION, EXIT_PRECONDITION));
    assert!(result.error.is_some());

    let pop = generate(&dir, "pop.json", &["unbounded-pop"]);
    let (status, result) = solve_json(&["brute-np", path_str(&pop), "--budget", "2"]);
    assert_eq!(status, EXIT_BUDGET);
    assert_eq!(result.budget_status, netmaint::run::BudgetStatus::Exceeded);

    let bad = InstanceBuilder::new()
        .int_edge("s", "t", 0, 2, 3, Preemption::None)
        .build("s", "t");
    let bad = write_instance(&dir, "bad.json", &bad);
    assert_eq!(solve_json(&["preemptive", path_str(&bad)]).0, EXIT_VALIDATION);

    assert_eq!(code(&netmaint(&["generate", "partition", "--numbers", "1,2"])), EXIT_FAILURE);
    assert_eq!(code(&netmaint(&["generate", "nonsense"])), EXIT_FAILURE);
    assert_eq!(code(&netmaint(&["generate", "random", "--mix", "1,2"])), EXIT_FAILURE);
    assert_eq!(code(&netmaint(&["solve", "preemptive", "/nonexistent/instance.json"])), EXIT_FAILURE);
    let garbage = dir.join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&netmaint(&["solve", "preemptive", path_str(&garbage)])), EXIT_FAILURE);
    assert_eq!(code(&netmaint(&["--help"])), EXIT_OK);
    assert_eq!(code(&netmaint(&["--version"])), EXIT_OK);
}

#[test]
fn tampered_schedule_is_rejected() {
    let dir = scratch("tampered");
    let inst = generate(&dir, "fig1.json", &["fig1"]);
    let sched = dir.join("s.json");
    assert_eq!(solve_json(&["preemptive", path_str(&inst), "--schedule-out", path_str(&sched)]).0, EXIT_OK);
    let mut schedule = schedule_from_json(&fs::read_to_string(&sched).unwrap()).unwrap();
    let first = schedule.assignment.keys().next().unwrap().clone();
    schedule.set(first.clone(), netmaint_core::IntervalSet::empty());
    fs::write(&sched, schedule_to_json(&schedule)).unwrap();
    let out = netmaint(&["eval", path_str(&inst), path_str(&sched), "--format", "json"]);
    assert_eq!(code(&out), EXIT_VALIDATION);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["feasible"], false);
    assert_eq!(report["violations"][0]["edge"], first.as_str());
}

#[test]
fn empty_schedule_on_zero_processing_instance() {
    let dir = scratch("zero");
    let inst = InstanceBuilder::new()
        .int_edge("s", "a", 0, 3, 0, Preemption::None)
        .int_edge("a", "t", 1, 3, 0, Preemption::Arbitrary)
        .build("s", "t");
    let inst_path = write_instance(&dir, "zero.json", &inst);
    let sched = dir.join("empty.json");
    fs::write(&sched, schedule_to_json(&Schedule::new())).unwrap();
    let out = netmaint(&["eval", path_str(&inst_path), path_str(&sched), "--format", "json"]);
    assert_eq!(code(&out), EXIT_OK);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["connected_time"], "3");
    assert_eq!(report["disconnected_time"], "0");
}

#[test]
fn batches_are_deterministic_across_job_counts() {
    let dir = scratch("batch");
    let mut paths = Vec::new();
    for seed in 0..6 {
        let name = format!("r{seed}.json");
        let seed = seed.to_string();
        let p = generate(&dir, &name, &["random", "--seed", &seed, "--nodes", "4", "--mix", "0,0,1"]);
        paths.push(path_str(&p).to_string());
    }
    let run = |jobs: &str| -> Vec<RunResult> {
        let mut args = vec!["solve", "nonpreemptive-approx", "--jobs", jobs];
        // Reverse order on input; output follows sorted path order.
        args.extend(paths.iter().rev().map(String::as_str));
        let out = netmaint(&args);
        assert_eq!(code(&out), EXIT_OK);
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    let serial = run("1");
    let parallel = run("4");
    assert_eq!(serial.len(), 6);
    let digests = |rs: &[RunResult]| rs.iter().map(|r| r.digest.clone()).collect::<Vec<_>>();
    assert_eq!(digests(&serial), digests(&parallel));
    let order: Vec<&str> = serial.iter().map(|r| r.instance_path.as_str()).collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);

    let out_dir = dir.join("out");
    let mut args = vec!["solve", "nonpreemptive-approx", "--out-dir", path_str(&out_dir)];
    args.extend(paths.iter().map(String::as_str));
    assert_eq!(code(&netmaint(&args)), EXIT_OK);
    let stored: RunResult = fs::read_to_string(out_dir.join("r3.result.json")).unwrap().parse().unwrap();
    let schedule = schedule_from_json(&fs::read_to_string(out_dir.join("r3.schedule.json")).unwrap()).unwrap();
    assert_eq!(stored.digest, stored.compute_digest());
    assert!(!schedule.assignment.is_empty());
}

#[test]
fn digests_are_stable_across_reruns() {
    let dir = scratch("digest");
    let inst = generate(&dir, "pop.json", &["unbounded-pop", "--preemption", "arbitrary"]);
    let (_, a) = solve_json(&["preemptive", path_str(&inst), "--objective", "min"]);
    let (_, b) = solve_json(&["preemptive", path_str(&inst), "--objective", "min"]);
    assert_eq!(a.digest, b.digest);
    assert_eq!(a.value.as_deref(), Some("3"));
    let parsed = instance_from_json(&fs::read_to_string(&inst).unwrap()).unwrap();
    assert_eq!(a.instance_digest, netmaint::run::instance_digest(&parsed));
    let (_, c) = solve_json(&["preemptive", path_str(&inst), "--objective", "max"]);
    assert_ne!(a.digest, c.digest);
}
