//! The `netmaint` command line: `generate`, `solve` and `eval`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netmaint_core::eval::connectivity_profile;
use netmaint_core::gen::{
    gen_3sat_gadget, gen_3sat_grid, gen_disjoint_paths, gen_fig1, gen_partition, gen_pop_lower, gen_random,
    gen_unbounded_pop, CnfFormula, PartitionInput, RandomParams,
};
use netmaint_core::instance::validate;
use netmaint_core::schedule::check_feasible;
use netmaint_core::{Error as CoreError, Instance, Preemption};

use crate::error::{CliError, Result, EXIT_FAILURE, EXIT_OK, EXIT_VALIDATION};
use crate::format::{instance_from_json, instance_to_json, report_to_json, schedule_from_json, schedule_to_json};
use crate::render::{svg_timeline, text_gantt, DEFAULT_WIDTH};
use crate::run::{instance_digest, solve, BudgetStatus, Mode, ObjectiveArg, RunResult, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "netmaint", version, about = "Maintenance scheduling for s+–s- connectivity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an instance of a named family as JSON.
    Generate(GenerateArgs),
    /// Run a solver on one or more instance files.
    Solve(SolveArgs),
    /// Check a schedule against an instance and report its connectivity.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Output file (stdout if omitted).
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
}

fn parse_preemption(text: &str) -> std::result::Result<Preemption, String> {
    Preemption::parse(text).ok_or_else(|| format!("unknown preemption `{text}` (arbitrary, integral, none)"))
}

fn parse_mix(text: &str) -> std::result::Result<[u32; 3], String> {
    let weights = text
        .split(',')
        .map(|w| w.trim().parse::<u32>().map_err(|_| format!("bad weight `{w}`")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    weights
        .try_into()
        .map_err(|w: Vec<u32>| format!("expected three weights, got {}", w.len()))
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Six nodes and eight unit jobs separating arbitrary from integral preemption.
    Fig1 {
        /// Allow preemption at integral times only.
        #[arg(long)]
        integral: bool,
    },
    /// Four-edge path with no connectivity without preemption.
    UnboundedPop {
        #[arg(long, default_value = "none", value_parser = parse_preemption)]
        preemption: Preemption,
    },
    /// Levelled path family separating preemptive and non-preemptive optima.
    PopLower {
        #[arg(long)]
        levels: u64,
        /// Must be divisible by lcm(1..=levels).
        #[arg(long)]
        scale: u64,
        #[arg(long, default_value = "none", value_parser = parse_preemption)]
        preemption: Preemption,
    },
    /// Satisfiability gadget for a DIMACS CNF file.
    SatGadget {
        /// DIMACS file, `-` for stdin.
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, default_value_t = 0)]
        t1: i64,
        #[arg(long, default_value_t = 1)]
        t2: i64,
        #[arg(long, default_value_t = 2)]
        horizon: i64,
    },
    /// Grid of satisfiability gates, one per ordered pair of slots.
    SatGrid {
        #[arg(long)]
        cnf: PathBuf,
    },
    /// Disjoint literal paths for a DIMACS CNF file.
    DisjointPaths {
        #[arg(long)]
        cnf: PathBuf,
    },
    /// Path instance for a list of positive integers with even sum.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        numbers: Vec<u64>,
    },
    /// Seeded random instance.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        nodes: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 8)]
        max_window: i64,
        #[arg(long, default_value_t = 3)]
        max_processing: i64,
        /// Weights of arbitrary, integral and non-preemptable jobs.
        #[arg(long, default_value = "1,0,0", value_parser = parse_mix)]
        mix: [u32; 3],
        #[arg(long)]
        max_edges: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFormat {
    Json,
    Text,
    Svg,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub mode: Mode,
    /// Instance files; results are reported in path order.
    #[arg(required = true)]
    pub instances: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "max")]
    pub objective: ObjectiveArg,
    /// Search-state budget of the exhaustive solvers.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Re-run start-time searches on the half-integral grid and fail if they improve.
    #[arg(long)]
    pub paranoia_halfint: bool,
    /// Schedule JSON output (single instance only).
    #[arg(long, conflicts_with = "out_dir")]
    pub schedule_out: Option<PathBuf>,
    /// Run result JSON output (single instance only).
    #[arg(long, conflicts_with = "out_dir")]
    pub result_out: Option<PathBuf>,
    /// Directory receiving `<stem>.schedule.json` and `<stem>.result.json` per instance.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: SolveFormat,
    /// Number of instances solved concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub instance: PathBuf,
    pub schedule: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: EvalFormat,
    /// Character cells spanning the horizon in the text chart.
    #[arg(long, default_value_t = DEFAULT_WIDTH)]
    pub width: usize,
    /// Output file (stdout if omitted).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::io(path, e))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&read_text(path)?)
}

fn read_cnf(path: &Path) -> Result<CnfFormula> {
    Ok(CnfFormula::parse_dimacs(&read_text(path)?)?)
}

/// Builds the instance requested by `family`.
pub fn generate(family: &Family) -> Result<Instance> {
    Ok(match family {
        Family::Fig1 { integral } => gen_fig1(if *integral {
            Preemption::IntegralOnly
        } else {
            Preemption::Arbitrary
        }),
        Family::UnboundedPop { preemption } => gen_unbounded_pop(*preemption),
        Family::PopLower {
            levels,
            scale,
            preemption,
        } => gen_pop_lower(*levels, *scale, *preemption)?,
        Family::SatGadget { cnf, t1, t2, horizon } => gen_3sat_gadget(&read_cnf(cnf)?, *t1, *t2, *horizon)?,
        Family::SatGrid { cnf } => gen_3sat_grid(&read_cnf(cnf)?)?,
        Family::DisjointPaths { cnf } => gen_disjoint_paths(&read_cnf(cnf)?)?,
        Family::Partition { numbers } => gen_partition(&PartitionInput::new(numbers.clone())?)?,
        Family::Random {
            seed,
            nodes,
            density,
            max_window,
            max_processing,
            mix,
            max_edges,
        } => {
            let params = RandomParams {
                node_count: *nodes,
                edge_density: *density,
                max_window: *max_window,
                max_processing: *max_processing,
                preemption_mix: *mix,
                max_edges: *max_edges,
            };
            gen_random(*seed, &params)?
        }
    })
}

fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let instance = generate(&args.family)?;
    validate(&instance).into_result()?;
    emit(out, args.out.as_deref(), &instance_to_json(&instance))
}

/// Where one instance's files go.
struct Outputs {
    schedule: Option<PathBuf>,
    result: Option<PathBuf>,
}

fn outputs_for(args: &SolveArgs, path: &Path) -> Outputs {
    match &args.out_dir {
        Some(dir) => {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Outputs {
                schedule: Some(dir.join(format!("{stem}.schedule.json"))),
                result: Some(dir.join(format!("{stem}.result.json"))),
            }
        }
        None => Outputs {
            schedule: args.schedule_out.clone(),
            result: args.result_out.clone(),
        },
    }
}

/// Solves one instance file and writes its outputs; failures are recorded
/// in the returned result rather than propagated.
fn solve_one(args: &SolveArgs, path: &Path) -> RunResult {
    let options = SolveOptions {
        objective: args.objective.into(),
        budget: args.budget,
        paranoia_halfint: args.paranoia_halfint,
    };
    let outputs = outputs_for(args, path);
    let started = Instant::now();
    let mut parameters = std::collections::BTreeMap::new();
    parameters.insert("budget".to_string(), args.budget.to_string());
    parameters.insert("paranoia_halfint".to_string(), args.paranoia_halfint.to_string());
    let mut result = RunResult {
        instance_path: path.display().to_string(),
        instance_digest: String::new(),
        solver: args.mode.name().to_string(),
        parameters,
        objective: options.objective.as_str().to_string(),
        value: None,
        connected_time: None,
        disconnected_time: None,
        schedule_path: None,
        budget_status: match args.mode {
            Mode::Preemptive | Mode::NonpreemptiveApprox | Mode::PathSplit => BudgetStatus::NotApplicable,
            _ => BudgetStatus::Within,
        },
        nodes: None,
        details: Default::default(),
        error: None,
        exit_code: EXIT_OK,
        digest: String::new(),
        wall_time_us: 0,
    };
    let outcome = (|| -> Result<()> {
        let instance = read_instance(path)?;
        result.instance_digest = instance_digest(&instance);
        let solved = solve(&instance, args.mode, &options)?;
        if let Some(p) = &outputs.schedule {
            write_text(p, &schedule_to_json(&solved.schedule))?;
            result.schedule_path = Some(p.display().to_string());
        }
        result.value = Some(solved.value.to_string());
        result.connected_time = Some(solved.connected_time.to_string());
        result.disconnected_time = Some(solved.disconnected_time.to_string());
        result.nodes = solved.nodes;
        result.details = solved.details;
        Ok(())
    })();
    if let Err(e) = outcome {
        if let CliError::Core(CoreError::BudgetExceeded { nodes }) = &e {
            result.budget_status = BudgetStatus::Exceeded;
            result.nodes = Some(*nodes);
        }
        result.exit_code = e.exit_code();
        result.error = Some(e.to_string());
    }
    result.wall_time_us = started.elapsed().as_micros() as u64;
    let result = result.seal();
    if let Some(p) = &outputs.result {
        if let Err(e) = write_text(p, &result.to_json()) {
            let mut failed = result.clone();
            failed.error = Some(e.to_string());
            failed.exit_code = e.exit_code();
            return failed.seal();
        }
    }
    result
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut paths = args.instances.clone();
    paths.sort();
    if paths.len() > 1 && (args.schedule_out.is_some() || args.result_out.is_some()) {
        return Err(CliError::Usage(String::from(
            "--schedule-out and --result-out take a single instance; use --out-dir for several",
        )));
    }
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let slots: Vec<Mutex<Option<RunResult>>> = paths.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = args.jobs.clamp(1, paths.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= paths.len() {
                    break;
                }
                let r = solve_one(args, &paths[k]);
                *slots[k].lock().expect("no worker panics while holding a slot") = Some(r);
            });
        }
    });
    let results: Vec<RunResult> = slots
        .into_iter()
        .map(|m| m.into_inner().expect("workers finished").expect("every path was solved"))
        .collect();
    let text = match args.format {
        SolveFormat::Json if results.len() == 1 => results[0].to_json(),
        SolveFormat::Json => {
            let mut s = serde_json::to_string_pretty(&results).expect("run results serialize");
            s.push('\n');
            s
        }
        SolveFormat::Text => results
            .iter()
            .map(|r| match (&r.value, &r.error) {
                (Some(v), _) => format!("{}: {} {} = {}\n", r.instance_path, r.solver, r.objective, v),
                (None, e) => format!("{}: {} failed: {}\n", r.instance_path, r.solver, e.as_deref().unwrap_or("")),
            })
            .collect(),
    };
    emit(out, None, &text)?;
    for r in &results {
        if let Some(e) = &r.error {
            let _ = writeln!(err, "netmaint: {}: {e}", r.instance_path);
        }
    }
    Ok(results.iter().map(|r| r.exit_code).find(|&c| c != EXIT_OK).unwrap_or(EXIT_OK))
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let instance = read_instance(&args.instance)?;
    validate(&instance).into_result()?;
    let schedule = schedule_from_json(&read_text(&args.schedule)?)?;
    let feasibility = check_feasible(&instance, &schedule);
    if !feasibility.is_feasible() {
        let text = match args.format {
            EvalFormat::Json => report_to_json(&instance, &feasibility, None),
            _ => {
                let mut s = String::from("infeasible schedule\n");
                for v in &feasibility.violations {
                    s.push_str(&format!("  {}: {}\n", v.edge, v.reason));
                }
                s
            }
        };
        emit(out, args.out.as_deref(), &text)?;
        return Ok(EXIT_VALIDATION);
    }
    let profile = connectivity_profile(&instance, &schedule)?;
    let text = match args.format {
        EvalFormat::Json => report_to_json(&instance, &feasibility, Some(&profile)),
        EvalFormat::Text => format!("feasible\n{}", text_gantt(&instance, &schedule, &profile, args.width)),
        EvalFormat::Svg => svg_timeline(&instance, &schedule, &profile),
    };
    emit(out, args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

/// Runs the command line on `args` (including the program name) and returns
/// the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Generate(a) => cmd_generate(a, out).map(|()| EXIT_OK),
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Eval(a) => cmd_eval(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "netmaint: {e}");
            e.exit_code()
        }
    }
}
