use super::{Goal, Phase, SolverConfig, Thresholds, Trace};
use crate::error::Result;
use crate::graph::{sym_diff_cycles, toggle, ColoredGraph, PerfectMatching};
use crate::skips::{
    choose_spans, enumerate_on, find_signed_skips, use_skip_cycle_set, CyclePath, Mode, Sign, Skip, SkipCycleSet,
};

/// Narrows the gap `r(M') - r(M)` to the configured bound, raising `M` and
/// lowering `M'` by even amounts so both parities survive.
pub fn phase1(
    g: &ColoredGraph,
    goal: Goal,
    mut m: PerfectMatching,
    mut mp: PerfectMatching,
    cfg: &SolverConfig,
    th: &Thresholds,
    trace: &mut Trace,
) -> Result<(PerfectMatching, PerfectMatching)> {
    let swapped = g.color_swapped();
    let half = g.n() / 2;
    let gap = |m: &PerfectMatching, mp: &PerfectMatching| (mp.red_count() - m.red_count()) as u64;
    while gap(&m, &mp) > th.gap_bound && goal.hit(&m).is_none() && goal.hit(&mp).is_none() {
        let mut moved = false;
        if let Some(next) = raise(g, &m, &mp, goal.k, cfg.mode, th.skip_scale)? {
            m = next;
            moved = true;
            trace.log(g, Phase::One, "raise", &m, &mp)?;
        }
        if gap(&m, &mp) > th.gap_bound && goal.hit(&m).is_none() {
            // lowering M' is raising it in the colour-swapped graph
            let lo = PerfectMatching::new(&swapped, mp.edges().iter().copied())?;
            let hi = PerfectMatching::new(&swapped, m.edges().iter().copied())?;
            let limit = half - goal.upper_floor();
            if let Some(next) = raise(&swapped, &lo, &hi, limit, cfg.mode, th.skip_scale)? {
                mp = PerfectMatching::new(g, next.edges().iter().copied())?;
                moved = true;
                trace.log(g, Phase::One, "lower", &m, &mp)?;
            }
        }
        if !moved {
            break;
        }
    }
    Ok((m, mp))
}

/// A matching with red count `r(lo) + d`, `d` even and positive, at most
/// `limit`, obtained from `lo Δ hi` by toggling cycles or using skips.
fn raise(
    g: &ColoredGraph,
    lo: &PerfectMatching,
    hi: &PerfectMatching,
    limit: usize,
    mode: Mode,
    scale: u64,
) -> Result<Option<PerfectMatching>> {
    let r = lo.red_count();
    if r + 2 > limit {
        return Ok(None);
    }
    let room = (limit - r) as i64;
    let cycles = sym_diff_cycles(g, lo, hi)?;
    let w = cycles.weights();

    // small weights: one even cycle, or two odd ones
    if let Some(i) = (0..w.len()).find(|&i| w[i] > 0 && w[i] % 2 == 0 && w[i] <= room) {
        return Ok(Some(toggle(g, lo, &cycles.cycles()[i..=i])?));
    }
    let odd: Vec<usize> = (0..w.len()).filter(|&i| w[i] > 0 && w[i] % 2 == 1).collect();
    for (x, &i) in odd.iter().enumerate() {
        if let Some(&j) = odd[x + 1..].iter().find(|&&j| w[i] + w[j] <= room) {
            let pair = [cycles.cycles()[i].clone(), cycles.cycles()[j].clone()];
            return Ok(Some(toggle(g, lo, &pair)?));
        }
    }

    // heavy cycles: positive skips relative to `hi` move `lo` by their weight
    let from_hi = sym_diff_cycles(g, hi, lo)?;
    for (i, c) in from_hi.cycles().iter().enumerate() {
        if from_hi.cycle_weight(i) >= 0 {
            continue;
        }
        let found = find_signed_skips(g, hi, c, i, CyclePath::new(0, c.len()), 2, Sign::Positive, scale, mode)?;
        let pick = pick_even(&found, room).or_else(|| {
            let all: Vec<Skip> = enumerate_on(g, hi, c, i, mode).ok()?.into_iter().filter(|s| s.weight > 0).collect();
            pick_even(&all, room)
        });
        if let Some(skips) = pick {
            let set = SkipCycleSet::new(&from_hi, skips, Vec::new())?;
            let (_, next) = use_skip_cycle_set(g, hi, lo, &from_hi, &set)?;
            return Ok(Some(next));
        }
    }
    Ok(None)
}

/// One even skip, or two disjoint skips with even total, within `room`.
fn pick_even(skips: &[Skip], room: i64) -> Option<Vec<Skip>> {
    if let Some(s) = skips.iter().find(|s| s.weight % 2 == 0 && s.weight <= room) {
        return Some(vec![s.clone()]);
    }
    for (x, a) in skips.iter().enumerate() {
        for b in &skips[x + 1..] {
            let total = a.weight + b.weight;
            if total % 2 == 0 && total <= room && choose_spans(&[a, b]).is_some() {
                return Some(vec![a.clone(), b.clone()]);
            }
        }
    }
    None
}
