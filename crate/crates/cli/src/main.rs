//! `codinggap` command-line front end.
//!
//! Exit codes: 0 success, 1 certified infeasibility (hop-infeasible LP,
//! rejected trace or cut, no acceptable hop bound), 2 input errors,
//! 3 internal limit exhaustion.

mod fail;

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codinggap::certificate::{best_coding_lower_bound, coding_lower_bound, verify_moving_cut, CodingBound, MovingCut};
use codinggap::flow::{solve_exact, solve_mwu, FlowStatus, DEFAULT_PATH_LIMIT};
use codinggap::gap::{base_instance, build_colored_bipartite, level_instance, product, BipartiteLimits, ProductInstance, ProductWiring};
use codinggap::instance::InstanceFile;
use codinggap::protocol::{compose_product_protocol, replay_coding, replay_routing, schedule_to_trace, xor_star_protocol, ProtocolTrace};
use codinggap::ratio;
use codinggap::report::{gap_report, CSV_HEADER};
use codinggap::route::{route, RouteConfig, Schedule, Solver};
use codinggap::{GapInstance, UnicastInstance};

use fail::Failure;

#[derive(Parser)]
#[command(name = "codinggap", version, about = "Routing versus network coding makespan for multiple unicasts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Multiplicative-weights accuracy.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Solve the path LP exactly instead.
    #[arg(long)]
    exact: bool,
    /// Path enumeration limit of the exact solver.
    #[arg(long = "limit-paths", default_value_t = DEFAULT_PATH_LIMIT)]
    limit_paths: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the hop-bounded concurrent flow LP.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "T")]
        hop_bound: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a routing schedule by hop-bound doubling, rounding and scheduling.
    Route {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "T-max", default_value_t = 64)]
        max_hop_bound: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Schedule output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the schedule as a forwarding trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Certify a coding lower bound, or verify a given moving cut.
    Certify {
        #[arg(long)]
        instance: PathBuf,
        /// Certify at this hop bound only.
        #[arg(long = "T")]
        hop_bound: Option<usize>,
        #[arg(long = "T-max", default_value_t = 64)]
        max_hop_bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Moving cut to verify instead of certifying.
        #[arg(long)]
        cut: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a coding trace or a routing schedule.
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, conflicts_with = "schedule", required_unless_present = "schedule")]
        trace: Option<PathBuf>,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Build gap instances: the base instance, a product, or a level of the family.
    Forge(ForgeArgs),
    /// One CSV row comparing routing and coding on an instance.
    GapReport {
        #[arg(long)]
        instance: PathBuf,
        /// Coding trace whose replayed makespan is the coding upper bound.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Row label; defaults to the instance file stem.
        #[arg(long)]
        name: Option<String>,
        #[arg(long = "T-max", default_value_t = 64)]
        max_hop_bound: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of the analytic parameter recurrences.
    Recurrences {
        #[arg(long = "max-level", default_value_t = 6)]
        max_level: usize,
        #[arg(long, default_value_t = 5)]
        r: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ForgeArgs {
    /// Base instance on this many sessions.
    #[arg(long, conflicts_with_all = ["outer", "level"])]
    base: Option<usize>,
    /// Outer factor of a product.
    #[arg(long, requires = "inner")]
    outer: Option<PathBuf>,
    #[arg(long, requires = "outer")]
    inner: Option<PathBuf>,
    /// Level of the recursive family (0 or 1), with `--r`.
    #[arg(long, requires = "r")]
    level: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Girth of the bipartite graph of a product.
    #[arg(long)]
    girth: Option<usize>,
    #[arg(long = "limit-nodes", default_value_t = 50_000)]
    limit_nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Wiring sidecar of a product.
    #[arg(long)]
    wiring: Option<PathBuf>,
    /// Coding trace: the XOR protocol for `--base`, the composed protocol
    /// for a product given `--outer-trace` and `--inner-trace`.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long = "outer-trace", requires = "inner_trace")]
    outer_trace: Option<PathBuf>,
    #[arg(long = "inner-trace", requires = "outer_trace")]
    inner_trace: Option<PathBuf>,
}

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &FsPath, text: &str) -> Result<(), Failure> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    fs::write(path, body).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// The instance, plus its gap structure when the file carries one.
fn load(path: &FsPath) -> Result<(UnicastInstance, Option<GapInstance>), Failure> {
    let file = InstanceFile::parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let gap = file.clone().into_gap()?;
    let inst = match &gap {
        Some(g) => g.instance.clone(),
        None => file.into_instance()?,
    };
    let violations = inst.validate();
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::input(format!("{}: {}", path.display(), text.join("; "))));
    }
    Ok((inst, gap))
}

fn load_gap(path: &FsPath) -> Result<GapInstance, Failure> {
    load(path)?.1.ok_or_else(|| Failure::input(format!("{}: no cut edges and parameters", path.display())))
}

fn load_trace(path: &FsPath) -> Result<ProtocolTrace, Failure> {
    Ok(ProtocolTrace::from_json(&read(path)?)?)
}

fn solver(args: &SolverArgs) -> Solver {
    if args.exact {
        Solver::Exact { path_limit: args.limit_paths }
    } else {
        Solver::Mwu
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { instance, hop_bound, solver, out } => {
            let (inst, _) = load(&instance)?;
            let sol = if solver.exact {
                solve_exact(&inst, hop_bound, solver.limit_paths)?
            } else {
                solve_mwu(&inst, hop_bound, solver.eps)?
            };
            if let Some(out) = out {
                write(&out, &sol.to_json(&inst))?;
            }
            println!("z={:.3} T={} status={}", ratio::to_f64(&sol.z), hop_bound, sol.status.as_str());
            if sol.status == FlowStatus::HopInfeasible {
                return Err(Failure::certified(String::new()));
            }
        }
        Command::Route { instance, max_hop_bound, solver: s, seed, out, trace } => {
            let (inst, _) = load(&instance)?;
            let cfg = RouteConfig { max_hop_bound, epsilon: s.eps, seed, solver: solver(&s) };
            let routed = route(&inst, &cfg)?;
            let times = replay_routing(&inst, &routed.schedule)?;
            if let Some(out) = out {
                write(&out, &routed.schedule.to_json(&inst))?;
            }
            if let Some(t) = trace {
                write(&t, &schedule_to_trace(&inst, &routed.schedule).to_json())?;
            }
            println!(
                "makespan={} T={} congestion={} dilation={} fallback={}",
                times.makespan(),
                routed.hop_bound,
                ratio::format(&routed.assignment.congestion),
                routed.assignment.dilation,
                routed.assignment.fallback
            );
        }
        Command::Certify { instance, hop_bound, max_hop_bound, seed, cut, out } => {
            let (inst, _) = load(&instance)?;
            let cut = match (cut, hop_bound) {
                (Some(path), _) => MovingCut::from_json(&inst, &read(&path)?)?,
                (None, Some(t)) => match coding_lower_bound(&inst, t, seed)? {
                    CodingBound::Certified { certificate, .. } => certificate.cut,
                    CodingBound::NoCertificate { z, dual_objective } => {
                        println!("certificate=none T={t} z={:.3} dual={}", ratio::to_f64(&z), ratio::format(&dual_objective));
                        return Ok(());
                    }
                },
                (None, None) => best_coding_lower_bound(&inst, max_hop_bound, seed)?.1,
            };
            let report = verify_moving_cut(&inst, &cut)?;
            if let Some(out) = out {
                write(&out, &cut.to_json(&inst))?;
            }
            let distance = report.distance.map_or("inf".to_string(), |d| d.to_string());
            println!("capacity={} demand={} distance={} valid={}", report.capacity, report.demand, distance, report.valid);
            if !report.valid {
                return Err(Failure::certified(String::new()));
            }
        }
        Command::Simulate { instance, trace, schedule } => {
            let (inst, _) = load(&instance)?;
            let times = match (trace, schedule) {
                (Some(t), _) => replay_coding(&inst, &load_trace(&t)?)?,
                (None, Some(s)) => replay_routing(&inst, &Schedule::from_json(&inst, &read(&s)?)?)?,
                (None, None) => unreachable!("clap requires one of --trace and --schedule"),
            };
            let list: Vec<String> = times.0.iter().map(u64::to_string).collect();
            println!("times={} makespan={}", list.join(","), times.makespan());
        }
        Command::Forge(args) => forge(args)?,
        Command::GapReport { instance, trace, name, max_hop_bound, eps, seed, out } => {
            let (inst, gap) = load(&instance)?;
            let trace = trace.map(|t| load_trace(&t)).transpose()?;
            let name = name.unwrap_or_else(|| instance.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
            let cfg = RouteConfig { max_hop_bound, epsilon: eps, seed, solver: Solver::Mwu };
            let row = gap_report(&name, &inst, gap.as_ref(), trace.as_ref(), &cfg)?;
            let csv = format!("{CSV_HEADER}\n{}\n", row.to_csv());
            match out {
                Some(out) => write(&out, &csv)?,
                None => print!("{csv}"),
            }
        }
        Command::Recurrences { max_level, r, out } => {
            let csv = codinggap::gap::recurrence_csv(max_level, r)?;
            match out {
                Some(out) => write(&out, &csv)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn forge(args: ForgeArgs) -> Result<(), Failure> {
    let limits = BipartiteLimits { max_nodes: args.limit_nodes, ..BipartiteLimits::default() };
    let (gap, wiring, trace): (GapInstance, Option<ProductWiring>, Option<ProtocolTrace>) =
        match (args.base, &args.outer, &args.inner, args.level) {
            (Some(k), _, _, _) => {
                let g = base_instance(k)?;
                let t = args.trace.as_ref().map(|_| xor_star_protocol(k)).transpose()?;
                (g, None, t)
            }
            (None, Some(o), Some(i), _) => {
                let outer = load_gap(o)?;
                let inner = load_gap(i)?;
                let colors = 2 * (outer.instance.edge_count() - outer.cut_edges.len());
                let girth = args.girth.unwrap_or(2 * (outer.params.b * inner.params.b) as usize);
                let b = build_colored_bipartite(colors, inner.instance.session_count(), girth, limits, args.seed)?;
                let p = product(&outer, &inner, &b)?;
                let t = match (&args.trace, &args.outer_trace, &args.inner_trace) {
                    (Some(_), Some(ot), Some(it)) => {
                        Some(compose_product_protocol(&load_trace(ot)?, &load_trace(it)?, &p.gap, Some(&p.wiring))?)
                    }
                    (Some(_), _, _) => return Err(Failure::input("--trace on a product needs --outer-trace and --inner-trace".into())),
                    _ => None,
                };
                (p.gap, Some(p.wiring), t)
            }
            (None, None, None, Some(level)) => {
                let r = args.r.ok_or_else(|| Failure::input("--level needs --r".into()))?;
                let ProductInstance { gap, wiring, .. } = level_instance(level, r, args.girth, limits, args.seed)?;
                (gap, (level > 0).then_some(wiring), None)
            }
            _ => return Err(Failure::input("choose one of --base, --outer/--inner, --level".into())),
        };
    write(&args.out, &gap.to_json())?;
    if let (Some(path), Some(w)) = (&args.wiring, &wiring) {
        write(path, &serde_json::to_string(w).expect("wiring serializes"))?;
    }
    if let (Some(path), Some(t)) = (&args.trace, &trace) {
        write(path, &t.to_json())?;
    }
    let report = codinggap::gap::verify_gap(&gap);
    println!(
        "nodes={} edges={} sessions={} cut={} b={} min_distance={} valid={}",
        gap.instance.node_count(),
        gap.instance.edge_count(),
        gap.instance.session_count(),
        gap.cut_edges.len(),
        gap.params.b,
        report.min_distance.map_or("inf".to_string(), |d| d.to_string()),
        report.passed()
    );
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
