use super::{color_coding_search, Goal, Phase, SolverConfig, SolverOutcome, Trace};
use crate::em::exchange::{find_exchange_in, Exchange};
use crate::error::Result;
use crate::graph::{Color, ColoredGraph, PerfectMatching};
use crate::oracles::{brute_decide, Problem};

/// Last resort once the symmetric difference is small: color coding from
/// both matchings, then growing exchanges, then enumeration.
pub fn phase3(
    g: &ColoredGraph,
    goal: Goal,
    m: PerfectMatching,
    mp: PerfectMatching,
    cfg: &SolverConfig,
    trace: &mut Trace,
) -> Result<SolverOutcome> {
    let mut targets = vec![goal.k];
    if goal.approx && goal.k > 0 {
        targets.push(goal.k - 1);
    }
    let accept = |x: PerfectMatching, trace: &mut Trace, step| -> Result<Option<SolverOutcome>> {
        let out = goal.hit(&x);
        if out.is_some() {
            trace.log(g, Phase::Three, step, &x, &mp)?;
        }
        Ok(out)
    };

    let l = cfg.phase3_l.min(cfg.color_coding_max_l);
    for &t in &targets {
        for base in [&m, &mp] {
            let delta = t as i64 - base.red_count() as i64;
            if let Some(x) = color_coding_search(g, base, l, delta, cfg.trials, cfg.seed, cfg.exec)? {
                if let Some(out) = accept(x, trace, "color")? {
                    return Ok(out);
                }
            }
        }
    }

    // every PM's red set differs from that of M in at most r(M) + k edges
    let mut budget = cfg.exchange_budget;
    let mut complete = true;
    for &t in &targets {
        let delta = t as i64 - m.red_count() as i64;
        for len in 1..=m.red_count() + t {
            match find_exchange_in(g, &m, Color::Red, len, delta, &mut budget) {
                Exchange::Found(x) => {
                    if let Some(out) = accept(x, trace, "exchange")? {
                        return Ok(out);
                    }
                }
                Exchange::Exhausted => {}
                Exchange::OutOfBudget => {
                    complete = false;
                    break;
                }
            }
        }
    }
    if complete {
        return Ok(SolverOutcome::NoInstance);
    }

    if g.n() <= cfg.brute_cap {
        for &t in &targets {
            if let Some(x) = brute_decide(Problem::Em, g, t, cfg.brute_cap)? {
                if let Some(out) = accept(x, trace, "enumerate")? {
                    return Ok(out);
                }
            }
        }
        return Ok(SolverOutcome::NoInstance);
    }
    Ok(SolverOutcome::BudgetExceeded {
        m,
        m_prime: mp,
        phase: Phase::Three,
    })
}
