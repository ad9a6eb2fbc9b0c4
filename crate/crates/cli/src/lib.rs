//! `exmatch` command line: solvers, generator and certificate checker.
//!
//! Exit codes: 0 decided yes, 1 decided no, 2 input error, 3 budget
//! exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use exmatch_core::bcpm::{solve_bcpm_bipartite, solve_bcpm_bruteforce};
use exmatch_core::cpm::{solve_cpm, BruteForceHull};
use exmatch_core::em::{solve_em, solve_em_approx, BcpmOracle, BipartiteOracle, BruteForceOracle, SolverConfig, SolverOutcome};
use exmatch_core::error::Error;
use exmatch_core::format::{parse_instance, parse_matching, render_cycle, render_em, render_matching, Instance};
use exmatch_core::generate::{generate, Model};
use exmatch_core::graph::{ColoredGraph, PerfectMatching};
use exmatch_core::mocp::solve_mocp;
use exmatch_core::oracles::{Problem, PM_ENUM_CAP};
use exmatch_core::skips::Mode;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "exmatch", version, about = "Exact matching on red/blue graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Oracle,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenModel {
    RandomBipartite,
    Complete,
    CompleteBipartite,
    PlantedEm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Em,
    Approx,
    Bcpm,
    Cpm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact matching: a perfect matching with exactly k red edges
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "oracle")]
        mode: SolveMode,
        /// independence number; selects the general mode
        #[arg(long, conflicts_with = "beta")]
        alpha: Option<usize>,
        /// bipartite independence number; selects the bipartite mode
        #[arg(long)]
        beta: Option<usize>,
        /// node budget of the zero skip-cycle search
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// small thresholds, so every phase runs on small inputs
        #[arg(long)]
        desk: bool,
        /// write solver trace lines here
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Bounded correct parity matching (bipartite unless --brute)
    Bcpm {
        instance: PathBuf,
        #[arg(long)]
        brute: bool,
    },
    /// Correct parity matching
    Cpm { instance: PathBuf },
    /// Minimum odd-weight directed cycle
    Mocp { instance: PathBuf },
    /// Print a generated instance
    Gen {
        #[arg(value_enum)]
        model: GenModel,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        na: Option<usize>,
        #[arg(long)]
        nb: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        red: f64,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recheck a matching against an instance
    Verify {
        instance: PathBuf,
        matching: PathBuf,
        #[arg(long, value_enum, default_value = "em")]
        problem: Claim,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Budget(_)) => {
                    let _ = writeln!(out, "s budget");
                    EXIT_BUDGET
                }
                _ => EXIT_INPUT,
            };
            let _ = writeln!(err, "error: {e:#}");
            code
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_em(path: &Path) -> anyhow::Result<(ColoredGraph, usize)> {
    match parse_instance(&read(path)?)? {
        Instance::Em { graph, k } => Ok((graph, k)),
        Instance::Mocp(_) => bail!("{} is a digraph instance, expected 'p em'", path.display()),
    }
}

fn report_matching(out: &mut dyn Write, g: &ColoredGraph, m: Option<PerfectMatching>) -> anyhow::Result<i32> {
    match m {
        Some(m) => {
            out.write_all(render_matching(g, &m).as_bytes())?;
            Ok(EXIT_YES)
        }
        None => {
            writeln!(out, "s no")?;
            Ok(EXIT_NO)
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        Command::Solve {
            instance,
            mode,
            alpha,
            beta,
            budget,
            seed,
            desk,
            trace,
        } => {
            let (g, k) = load_em(&instance)?;
            let mut cfg = if desk { SolverConfig::desk() } else { SolverConfig::default() };
            cfg.seed = seed;
            if let Some(b) = budget {
                cfg.node_budget = b;
            }
            (cfg.mode, cfg.param) = match (alpha, beta) {
                (Some(a), _) => (Mode::Alpha, Some(a)),
                (None, Some(b)) => (Mode::Beta, Some(b)),
                (None, None) if g.is_bipartite() => (Mode::Beta, None),
                (None, None) => (Mode::Alpha, None),
            };
            let report = match mode {
                SolveMode::Approx => solve_em_approx(&g, k, &cfg)?,
                SolveMode::Oracle => {
                    let oracle: Box<dyn BcpmOracle> = if g.is_bipartite() {
                        Box::new(BipartiteOracle { exec: cfg.exec })
                    } else {
                        Box::new(BruteForceOracle { cap: PM_ENUM_CAP })
                    };
                    solve_em(&g, k, &cfg, oracle.as_ref())?
                }
            };
            if let Some(path) = trace {
                let text: String = report.trace.events.iter().map(|e| format!("{e}\n")).collect();
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            match report.outcome {
                SolverOutcome::Solution(m) | SolverOutcome::Approx(m) => report_matching(out, &g, Some(m)),
                SolverOutcome::NoInstance => report_matching(out, &g, None),
                SolverOutcome::BudgetExceeded { phase, .. } => {
                    writeln!(out, "c budget exceeded in phase {phase}")?;
                    writeln!(out, "s budget")?;
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Bcpm { instance, brute } => {
            let (g, k) = load_em(&instance)?;
            let m = if brute {
                solve_bcpm_bruteforce(&g, k, PM_ENUM_CAP)?
            } else {
                solve_bcpm_bipartite(&g, k)?
            };
            report_matching(out, &g, m)
        }
        Command::Cpm { instance } => {
            let (g, k) = load_em(&instance)?;
            let m = solve_cpm(&g, k, &BruteForceHull::default())?;
            report_matching(out, &g, m)
        }
        Command::Mocp { instance } => {
            let d = match parse_instance(&read(&instance)?)? {
                Instance::Mocp(d) => d,
                Instance::Em { .. } => bail!("{} is a graph instance, expected 'p mocp'", instance.display()),
            };
            match solve_mocp(&d)? {
                Some(c) => {
                    out.write_all(render_cycle(&d, &c).as_bytes())?;
                    Ok(EXIT_YES)
                }
                None => {
                    writeln!(out, "s no")?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Gen {
            model,
            n,
            na,
            nb,
            p,
            red,
            k,
            seed,
        } => {
            let model = match model {
                GenModel::RandomBipartite => {
                    let n_a = na.unwrap_or(n / 2);
                    Model::RandomBipartite {
                        n_a,
                        n_b: nb.unwrap_or(n_a),
                        p,
                        red,
                    }
                }
                GenModel::Complete => Model::Complete { n, red },
                GenModel::CompleteBipartite => Model::CompleteBipartite {
                    n_a: na.unwrap_or(n / 2),
                    red,
                },
                GenModel::PlantedEm => Model::PlantedEm { n, k: k.unwrap_or(n / 4) },
            };
            let (g, default_k) = generate(&model, seed)?;
            writeln!(out, "c generated by exmatch gen, seed {seed}")?;
            out.write_all(render_em(&g, k.unwrap_or(default_k)).as_bytes())?;
            Ok(EXIT_YES)
        }
        Command::Verify {
            instance,
            matching,
            problem,
        } => {
            let (g, k) = load_em(&instance)?;
            let m = match parse_matching(&g, &read(&matching)?) {
                Ok(m) => m,
                Err(Error::Input(msg)) => {
                    writeln!(out, "c {msg}")?;
                    writeln!(out, "s no")?;
                    return Ok(EXIT_NO);
                }
                Err(e) => return Err(e.into()),
            };
            let r = m.red_count();
            let ok = match problem {
                Claim::Em => Problem::Em.accepts(r, k),
                Claim::Approx => r == k || r + 1 == k,
                Claim::Bcpm => Problem::Bcpm.accepts(r, k),
                Claim::Cpm => Problem::Cpm.accepts(r, k),
            };
            if ok {
                writeln!(out, "s yes r={r}")?;
                Ok(EXIT_YES)
            } else {
                writeln!(out, "c perfect matching with r={r} does not meet the claim for k={k}")?;
                writeln!(out, "s no")?;
                Ok(EXIT_NO)
            }
        }
    }
}
