//! Exact matching: three-phase reduction to a BCPM oracle, and the
//! oracle-free approximation returning `k` or `k - 1` red edges.

mod coloring;
mod exchange;
mod phase1;
mod phase2;
mod phase3;

use std::fmt;

pub use coloring::{color_coding_search, trials_for, Trials};
pub use exchange::{find_exchange, Exchange};
pub use phase1::phase1;
pub use phase2::{phase2, Phase2};
pub use phase3::phase3;

use crate::bcpm::{solve_bcpm_bipartite_with, solve_bcpm_bruteforce};
use crate::error::{input, Result};
use crate::graph::{sym_diff_cycles, ColoredGraph, PerfectMatching};
use crate::matching::{extremal_red_pm, Direction};
use crate::oracles::{brute_independence, INDEPENDENCE_CAP, PM_ENUM_CAP};
use crate::par::Execution;
use crate::skips::Mode;

/// Thresholds left as `None` are derived from the parameter `p` (alpha or
/// beta): skip scale `4^p`, phase-1 gap `16 * 4^p`, lemma `t = 256 * 16^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub mode: Mode,
    /// alpha (general mode) or beta (bipartite mode); computed by brute
    /// force for small graphs when absent
    pub param: Option<usize>,
    pub skip_scale: Option<u64>,
    pub gap_bound: Option<u64>,
    pub lemma_t: Option<u64>,
    /// symmetric-difference budget of the last phase
    pub phase3_l: usize,
    /// largest `L` handed to color coding
    pub color_coding_max_l: usize,
    pub trials: Option<Trials>,
    pub seed: u64,
    /// nodes for the zero skip-cycle set subset search, per call
    pub node_budget: u64,
    /// candidate sets tried by the exchange fallback of the last phase
    pub exchange_budget: u64,
    /// enumeration fallback for graphs up to this many vertices (0 disables)
    pub brute_cap: usize,
    pub exec: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: Mode::Alpha,
            param: None,
            skip_scale: None,
            gap_bound: None,
            lemma_t: None,
            phase3_l: 12,
            color_coding_max_l: 8,
            trials: None,
            seed: 0x5eed,
            node_budget: 200_000,
            exchange_budget: 50_000,
            brute_cap: PM_ENUM_CAP,
            exec: Execution::default(),
        }
    }
}

impl SolverConfig {
    /// Defaults suited to bipartite inputs.
    pub fn bipartite() -> Self {
        SolverConfig {
            mode: Mode::Beta,
            ..SolverConfig::default()
        }
    }

    /// Small thresholds so that every phase actually runs on small graphs.
    pub fn desk() -> Self {
        SolverConfig {
            skip_scale: Some(1),
            gap_bound: Some(2),
            lemma_t: Some(1),
            ..SolverConfig::default()
        }
    }
}

/// Thresholds after filling in defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub param: usize,
    pub skip_scale: u64,
    pub gap_bound: u64,
    pub lemma_t: u64,
}

impl SolverConfig {
    pub fn resolve(&self, g: &ColoredGraph) -> Result<Thresholds> {
        if self.mode == Mode::Beta && !g.is_bipartite() {
            return input("bipartite mode needs a bipartite graph");
        }
        let param = match self.param {
            Some(p) => p,
            None if g.n() <= INDEPENDENCE_CAP => brute_independence(g, self.mode)?,
            None => {
                return input(format!(
                    "graph has more than {INDEPENDENCE_CAP} vertices; give the parameter explicitly"
                ))
            }
        };
        let four = 4u64.saturating_pow(param.min(64) as u32);
        Ok(Thresholds {
            param,
            skip_scale: self.skip_scale.unwrap_or(four).max(1),
            gap_bound: self.gap_bound.unwrap_or(four.saturating_mul(16)).max(1),
            lemma_t: self.lemma_t.unwrap_or(four.saturating_mul(four).saturating_mul(256)).max(1),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Init,
    One,
    Two,
    Three,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Init => "0",
            Phase::One => "1",
            Phase::Two => "2",
            Phase::Three => "3",
        })
    }
}

/// One solver event: the matchings' red counts and `|M Δ M'|` after `step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub phase: Phase,
    pub step: &'static str,
    pub r_m: usize,
    pub r_mp: usize,
    pub sym_diff: usize,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trace {} {} {} {} {}", self.phase, self.step, self.r_m, self.r_mp, self.sym_diff)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub(crate) fn log(
        &mut self,
        g: &ColoredGraph,
        phase: Phase,
        step: &'static str,
        m: &PerfectMatching,
        mp: &PerfectMatching,
    ) -> Result<()> {
        let sym_diff = sym_diff_cycles(g, m, mp)?.edge_count();
        let ev = TraceEvent {
            phase,
            step,
            r_m: m.red_count(),
            r_mp: mp.red_count(),
            sym_diff,
        };
        log::debug!("{ev}");
        self.events.push(ev);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    /// exactly `k` red edges
    Solution(PerfectMatching),
    /// `k - 1` red edges (approximation only)
    Approx(PerfectMatching),
    NoInstance,
    BudgetExceeded {
        m: PerfectMatching,
        m_prime: PerfectMatching,
        phase: Phase,
    },
}

impl SolverOutcome {
    pub fn matching(&self) -> Option<&PerfectMatching> {
        match self {
            SolverOutcome::Solution(m) | SolverOutcome::Approx(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverReport {
    pub outcome: SolverOutcome,
    pub trace: Trace,
}

/// Answers BCPM: a PM with `r <= k` and `r ≡ k (mod 2)`.
pub trait BcpmOracle {
    fn solve(&self, g: &ColoredGraph, k: usize) -> Result<Option<PerfectMatching>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BipartiteOracle {
    pub exec: Execution,
}

impl BcpmOracle for BipartiteOracle {
    fn solve(&self, g: &ColoredGraph, k: usize) -> Result<Option<PerfectMatching>> {
        solve_bcpm_bipartite_with(g, k, self.exec)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BruteForceOracle {
    pub cap: usize,
}

impl Default for BruteForceOracle {
    fn default() -> Self {
        BruteForceOracle { cap: PM_ENUM_CAP }
    }
}

impl BcpmOracle for BruteForceOracle {
    fn solve(&self, g: &ColoredGraph, k: usize) -> Result<Option<PerfectMatching>> {
        solve_bcpm_bruteforce(g, k, self.cap)
    }
}

/// Two oracle calls: `M` with `r(M) <= k` and `M'` with `r(M') >= k`, both of
/// the parity of `k`. The second call runs on the colour-swapped graph with
/// `n/2 - k`.
pub fn initial_matchings(
    g: &ColoredGraph,
    k: usize,
    oracle: &dyn BcpmOracle,
) -> Result<Option<(PerfectMatching, PerfectMatching)>> {
    let half = g.n() / 2;
    if g.n() % 2 == 1 || k > half {
        return Ok(None);
    }
    let Some(m) = oracle.solve(g, k)? else {
        return Ok(None);
    };
    let Some(mp) = oracle.solve(&g.color_swapped(), half - k)? else {
        return Ok(None);
    };
    let mp = PerfectMatching::new(g, mp.edges().iter().copied())?;
    Ok(Some((m, mp)))
}

/// Which red counts end the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Goal {
    pub k: usize,
    pub approx: bool,
}

impl Goal {
    /// least red count the upper matching may drop to
    pub fn upper_floor(self) -> usize {
        if self.approx {
            self.k.saturating_sub(1)
        } else {
            self.k
        }
    }

    pub fn hit(self, m: &PerfectMatching) -> Option<SolverOutcome> {
        let r = m.red_count();
        if r == self.k {
            Some(SolverOutcome::Solution(m.clone()))
        } else if self.approx && r + 1 == self.k {
            Some(SolverOutcome::Approx(m.clone()))
        } else {
            None
        }
    }
}

/// Exact matching with a BCPM oracle.
pub fn solve_em(g: &ColoredGraph, k: usize, cfg: &SolverConfig, oracle: &dyn BcpmOracle) -> Result<SolverReport> {
    let th = cfg.resolve(g)?;
    let mut trace = Trace::default();
    let Some((m, mp)) = initial_matchings(g, k, oracle)? else {
        return Ok(SolverReport {
            outcome: SolverOutcome::NoInstance,
            trace,
        });
    };
    let goal = Goal { k, approx: false };
    let outcome = run_phases(g, goal, m, mp, cfg, &th, &mut trace)?;
    Ok(SolverReport { outcome, trace })
}

/// Approximation without an oracle: a PM with `k` or `k - 1` red edges.
pub fn solve_em_approx(g: &ColoredGraph, k: usize, cfg: &SolverConfig) -> Result<SolverReport> {
    let th = cfg.resolve(g)?;
    let mut trace = Trace::default();
    let none = |trace| {
        Ok(SolverReport {
            outcome: SolverOutcome::NoInstance,
            trace,
        })
    };
    let (Some(m), Some(mp)) = (
        extremal_red_pm(g, Direction::Minimize),
        extremal_red_pm(g, Direction::Maximize),
    ) else {
        return none(trace);
    };
    let goal = Goal { k, approx: true };
    if m.red_count() > k || mp.red_count() < goal.upper_floor() {
        return none(trace);
    }
    let outcome = run_phases(g, goal, m, mp, cfg, &th, &mut trace)?;
    Ok(SolverReport { outcome, trace })
}

fn run_phases(
    g: &ColoredGraph,
    goal: Goal,
    m: PerfectMatching,
    mp: PerfectMatching,
    cfg: &SolverConfig,
    th: &Thresholds,
    trace: &mut Trace,
) -> Result<SolverOutcome> {
    trace.log(g, Phase::Init, "start", &m, &mp)?;
    for x in [&m, &mp] {
        if let Some(done) = goal.hit(x) {
            return Ok(done);
        }
    }
    let (m, mp) = phase1(g, goal, m, mp, cfg, th, trace)?;
    match phase2(g, goal, m, mp, cfg, th, trace)? {
        Phase2::Done(outcome) => Ok(outcome),
        Phase2::Stuck { m, m_prime, .. } => phase3(g, goal, m, m_prime, cfg, trace),
    }
}
