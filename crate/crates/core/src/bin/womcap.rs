use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use womcap::constant::{DEFAULT_GRID, DEFAULT_NODE_CAP, EXACT_MAX_N};
use womcap::format::fmt9;
use womcap::output::{write_sweep, write_trajectory};
use womcap::variable::EXHAUSTIVE_MAX_N;
use womcap::*;

#[derive(Parser)]
#[command(
    name = "womcap",
    version,
    about = "Advertisement and capacity planning under word-of-mouth reputation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Variable,
    Constant,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Variable => Mode::Variable,
            ModeArg::Constant => Mode::Constant,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Firm {
    Aware,
    Naive,
    Exhaustive,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the aware or naive firm's advertisement policy.
    Solve {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum)]
        firm: Firm,
        #[arg(long)]
        scenario: PathBuf,
        /// Exact branch-and-bound search (constant mode).
        #[arg(long, conflicts_with = "grid")]
        exact: bool,
        /// Discretized solver with this many grid points (constant mode).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
        /// Trajectory CSV output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the state thresholds, the observable states and optionally the state of `--r`.
    Classify {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        r: Option<f64>,
    },
    /// Report which structural results apply to a constant-capacity scenario.
    Check {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Sweep one parameter and write one CSV row per sampled value.
    Sweep {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        param: String,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Solve rows one after another.
        #[arg(long)]
        serial: bool,
    },
    /// Simulate a given advertisement policy (`HHLL` or `2H-2L`).
    Trajectory {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        policy: String,
        /// Match capacity to demand even if the scenario fixes `s`.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the naive firm's decision thresholds as `name = value | undefined`.
    #[command(visible_alias = "classify-thresholds")]
    Thresholds {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

fn load(path: &Path, mode: Option<Mode>) -> Result<Scenario> {
    let mut params = ScenarioParams::from_file(path)?;
    if mode == Some(Mode::Variable) {
        params.capacity = None;
    }
    Scenario::new(params)
}

fn save_trajectory(out: &Option<PathBuf>, traj: &Trajectory) -> Result<()> {
    if let Some(path) = out {
        write_trajectory(BufWriter::new(File::create(path)?), traj)?;
    }
    Ok(())
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt9).unwrap_or_else(|| "undefined".to_string())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            mode,
            firm,
            scenario,
            exact,
            grid,
            node_cap,
            out,
        } => {
            let mode = Mode::from(mode);
            let sc = load(&scenario, Some(mode))?;
            let res = match (mode, firm) {
                (Mode::Variable, Firm::Aware) => solve_aware_variable(&sc)?,
                (Mode::Variable, Firm::Naive) => solve_naive_variable(&sc)?,
                (Mode::Variable, Firm::Exhaustive) => exhaustive_variable(&sc, EXHAUSTIVE_MAX_N)?,
                (Mode::Constant, Firm::Naive) => solve_naive_constant(&sc)?,
                (Mode::Constant, Firm::Aware) => match grid {
                    Some(g) => solve_aware_constant_grid(&sc, g)?,
                    None if exact || sc.horizon <= EXACT_MAX_N => {
                        solve_aware_constant_exact(&sc, node_cap)?
                    }
                    None => solve_aware_constant_grid(&sc, DEFAULT_GRID)?,
                },
                (Mode::Constant, Firm::Exhaustive) => {
                    return Err(Error::Usage(
                        "--firm exhaustive is only available in variable mode".into(),
                    ))
                }
            };
            save_trajectory(&out, &res.trajectory)?;
            println!("profit={} policy={}", fmt9(res.total_profit), res.policy);
        }
        Command::Classify { scenario, r } => {
            let sc = load(&scenario, None)?;
            let t = thresholds(&sc)?;
            println!("x1 = {}", fmt9(t.x1));
            println!("x2 = {}", fmt9(t.x2));
            println!("y1 = {}", fmt9(t.y1));
            println!("y2 = {}", fmt9(t.y2));
            println!("omega = {}", omega(&sc)?);
            if let Some(r) = r {
                if !(0.0..=1.0).contains(&r) {
                    return Err(Error::Usage(format!("--r {r} outside [0, 1]")));
                }
                println!("state = {}", classify_state(&sc, r)?);
            }
        }
        Command::Check { scenario } => {
            let sc = load(&scenario, None)?;
            let lemma = match lemma1_upper_bound(&sc) {
                Ok(h) => h.to_string(),
                Err(Error::LemmaInapplicable(_)) => "n/a".to_string(),
                Err(e) => return Err(e),
            };
            println!(
                "prop4={} prop5={} lemma1_bound={}",
                prop4_applies(&sc)?,
                prop5_check(&sc)?.applicable,
                lemma
            );
        }
        Command::Sweep {
            mode,
            param,
            samples,
            seed,
            scenario,
            out,
            serial,
        } => {
            let spec = SweepSpec {
                base: ScenarioParams::from_file(&scenario)?,
                param: param.parse()?,
                samples,
                seed,
                mode: mode.into(),
            };
            let rows = run_sweep(&spec, !serial)?;
            write_sweep(BufWriter::new(File::create(&out)?), &rows)?;
            let skipped = rows.iter().filter(|r| r.skipped.is_some()).count();
            println!("rows={} skipped={}", rows.len(), skipped);
        }
        Command::Trajectory {
            scenario,
            policy,
            mode,
            out,
        } => {
            let sc = load(&scenario, mode.map(Mode::from))?;
            let policy: AdPolicy = policy.parse()?;
            let traj = simulate_default(&sc, &policy)?;
            save_trajectory(&out, &traj)?;
            println!("profit={} policy={}", fmt9(traj.total_profit), policy);
        }
        Command::Thresholds { scenario, mode } => {
            let sc = load(&scenario, mode.map(Mode::from))?;
            if sc.capacity.is_some() {
                let t = constant_thresholds(&sc)?;
                println!("gamma = {}", opt(t.gamma));
                println!("omega = {}", opt(t.omega));
                println!("phi = {}", fmt9(t.phi));
                println!("beta = {}", opt(t.beta));
            } else {
                let t = variable_thresholds(&sc);
                println!("iota = {}", fmt9(t.iota));
                println!("rho = {}", fmt9(t.rho));
                println!("kappa = {}", opt(t.kappa));
                println!("tau = {}", fmt9(t.tau));
                println!("nu = {}", opt(t.nu));
            }
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidParams { .. } => 2,
        Error::NodeCapExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            eprintln!("error: {line}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::from(exit_code(&e))
        }
    }
}
