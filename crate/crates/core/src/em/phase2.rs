use super::{Goal, Phase, SolverConfig, SolverOutcome, Thresholds, Trace};
use crate::em::exchange::{find_exchange, Exchange};
use crate::error::Result;
use crate::graph::{sym_diff_cycles, Color, ColoredGraph, PerfectMatching};
use crate::skips::{find_zero_skip_cycle_set, use_skip_cycle_set, ZeroSearch};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase2 {
    Done(SolverOutcome),
    /// no step applies; the symmetric difference is small in the sense of
    /// the last phase
    Stuck {
        m: PerfectMatching,
        m_prime: PerfectMatching,
        budget_exhausted: bool,
    },
}

/// Repeats: (i) raise `M` by two red edges, (ii) lower `M'` by two, (iii)
/// shrink `M Δ M'` with a zero skip-cycle set. Each success lowers
/// `(r(M') - r(M), |M Δ M'|)` lexicographically.
pub fn phase2(
    g: &ColoredGraph,
    goal: Goal,
    mut m: PerfectMatching,
    mut mp: PerfectMatching,
    cfg: &SolverConfig,
    th: &Thresholds,
    trace: &mut Trace,
) -> Result<Phase2> {
    let rounds = (g.n() * g.n()).max(1);
    for _ in 0..=rounds {
        for x in [&m, &mp] {
            if let Some(done) = goal.hit(x) {
                return Ok(Phase2::Done(done));
            }
        }
        if m.red_count() + 2 <= goal.k {
            if let Exchange::Found(next) = find_exchange(g, &m, Color::Red, 2, 2, u64::MAX) {
                m = next;
                trace.log(g, Phase::Two, "i", &m, &mp)?;
                continue;
            }
        }
        if mp.red_count() >= goal.upper_floor() + 2 {
            if let Exchange::Found(next) = find_exchange(g, &mp, Color::Blue, 2, -2, u64::MAX) {
                mp = next;
                trace.log(g, Phase::Two, "ii", &m, &mp)?;
                continue;
            }
        }
        let cycles = sym_diff_cycles(g, &m, &mp)?;
        let search = ZeroSearch {
            mode: cfg.mode,
            t: th.lemma_t,
            node_budget: cfg.node_budget,
        };
        let found = find_zero_skip_cycle_set(g, &m, &cycles, search)?;
        match found.set {
            Some(set) => {
                let (_, next) = use_skip_cycle_set(g, &m, &mp, &cycles, &set)?;
                mp = next;
                trace.log(g, Phase::Two, "iii", &m, &mp)?;
            }
            None => {
                return Ok(Phase2::Stuck {
                    m,
                    m_prime: mp,
                    budget_exhausted: found.budget_exhausted,
                })
            }
        }
    }
    Ok(Phase2::Done(SolverOutcome::BudgetExceeded {
        m,
        m_prime: mp,
        phase: Phase::Two,
    }))
}
