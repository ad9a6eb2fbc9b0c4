//! Brute-force reference implementations. Slow on purpose; every cap is a
//! hard error rather than a silent truncation.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, EdgeId, PerfectMatching};
use crate::mocp::{DirectedCycle, WeightedDigraph};
use crate::skips::Mode;

/// Default vertex cap for perfect-matching enumeration.
pub const PM_ENUM_CAP: usize = 16;
/// Vertex cap for simple-cycle enumeration.
pub const CYCLE_ENUM_CAP: usize = 12;
/// Vertex cap for independence numbers.
pub const INDEPENDENCE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    /// exactly k red edges
    Em,
    /// at most k red edges, same parity as k
    Bcpm,
    /// same parity as k
    Cpm,
}

impl Problem {
    pub fn accepts(self, red: usize, k: usize) -> bool {
        match self {
            Problem::Em => red == k,
            Problem::Bcpm => red <= k && red % 2 == k % 2,
            Problem::Cpm => red % 2 == k % 2,
        }
    }
}

fn check_cap(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        return Err(Error::Budget(format!("{what}: {n} vertices exceed the cap of {cap}")));
    }
    Ok(())
}

/// Calls `f` on the edge ids of every perfect matching, each exactly once.
/// Order: the lowest uncovered vertex is matched first, to its neighbours in
/// ascending order.
pub fn for_each_pm<F>(g: &ColoredGraph, cap: usize, mut f: F) -> Result<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    check_cap(g.n(), cap, "perfect matching enumeration")?;
    if g.n() % 2 == 1 {
        return Ok(());
    }
    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(g.n() / 2);
    let _ = pm_rec(g, 0, &mut covered, &mut chosen, &mut f);
    Ok(())
}

fn pm_rec<F>(
    g: &ColoredGraph,
    from: usize,
    covered: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    let Some(v) = (from..g.n()).find(|&v| !covered[v]) else {
        return f(chosen);
    };
    covered[v] = true;
    for &(w, e) in g.neighbors(v) {
        if covered[w] {
            continue;
        }
        covered[w] = true;
        chosen.push(e);
        let flow = pm_rec(g, v + 1, covered, chosen, f);
        chosen.pop();
        covered[w] = false;
        flow?;
    }
    covered[v] = false;
    ControlFlow::Continue(())
}

/// All perfect matchings in enumeration order.
pub fn enumerate_pms(g: &ColoredGraph, cap: usize) -> Result<Vec<PerfectMatching>> {
    let mut out = Vec::new();
    for_each_pm(g, cap, |edges| {
        out.push(PerfectMatching::new(g, edges.iter().copied()).expect("enumerated matchings are perfect"));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of perfect matchings, counted by a separate recursion over the
/// lowest vertex's partner without materialising matchings.
pub fn count_pms(g: &ColoredGraph, cap: usize) -> Result<u64> {
    check_cap(g.n(), cap, "perfect matching count")?;
    fn rec(g: &ColoredGraph, mask: u64) -> u64 {
        let full = (1u64 << g.n()) - 1;
        if mask == full {
            return 1;
        }
        let v = (!mask).trailing_zeros() as usize;
        g.neighbors(v)
            .iter()
            .filter(|&&(w, _)| mask & (1 << w) == 0)
            .map(|&(w, _)| rec(g, mask | 1 << v | 1 << w))
            .sum()
    }
    if g.n() % 2 == 1 {
        return Ok(0);
    }
    Ok(rec(g, 0))
}

/// A witness perfect matching for `problem` at `k`, or `None`.
pub fn brute_decide(problem: Problem, g: &ColoredGraph, k: usize, cap: usize) -> Result<Option<PerfectMatching>> {
    let mut found = None;
    for_each_pm(g, cap, |edges| {
        let red = edges.iter().filter(|&&e| g.edge(e).is_red()).count();
        if problem.accepts(red, k) {
            found = Some(edges.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok(found.map(|e| PerfectMatching::new(g, e).expect("enumerated matchings are perfect")))
}

/// Sorted set of red counts over all perfect matchings.
pub fn red_counts(g: &ColoredGraph, cap: usize) -> Result<Vec<usize>> {
    let mut seen = vec![false; g.n() / 2 + 1];
    for_each_pm(g, cap, |edges| {
        seen[edges.iter().filter(|&&e| g.edge(e).is_red()).count()] = true;
        ControlFlow::Continue(())
    })?;
    Ok((0..seen.len()).filter(|&r| seen[r]).collect())
}

/// Calls `f` once per simple directed cycle, reported from its smallest
/// vertex. Parallel arcs give distinct cycles.
pub fn for_each_simple_cycle<F>(d: &WeightedDigraph, cap: usize, mut f: F) -> Result<()>
where
    F: FnMut(&DirectedCycle) -> ControlFlow<()>,
{
    check_cap(d.n(), cap, "cycle enumeration")?;
    let mut on_path = vec![false; d.n()];
    for s in 0..d.n() {
        let mut cyc = DirectedCycle {
            vertices: vec![s],
            arcs: Vec::new(),
            weight: 0,
        };
        on_path[s] = true;
        let flow = cycle_rec(d, s, s, &mut on_path, &mut cyc, &mut f);
        on_path[s] = false;
        if flow.is_break() {
            break;
        }
    }
    Ok(())
}

fn cycle_rec<F>(
    d: &WeightedDigraph,
    s: usize,
    v: usize,
    on_path: &mut [bool],
    cyc: &mut DirectedCycle,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&DirectedCycle) -> ControlFlow<()>,
{
    for &a in d.out_arcs(v) {
        let arc = d.arc(a);
        let w = arc.head;
        if w == s {
            cyc.arcs.push(a);
            cyc.weight += arc.weight;
            let flow = f(cyc);
            cyc.arcs.pop();
            cyc.weight -= arc.weight;
            flow?;
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            cyc.vertices.push(w);
            cyc.arcs.push(a);
            cyc.weight += arc.weight;
            let flow = cycle_rec(d, s, w, on_path, cyc, f);
            cyc.weight -= arc.weight;
            cyc.arcs.pop();
            cyc.vertices.pop();
            on_path[w] = false;
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Minimum odd-weight simple directed cycle by exhaustive enumeration;
/// ties go to the first cycle found.
pub fn brute_mocp(d: &WeightedDigraph) -> Result<Option<DirectedCycle>> {
    let mut best: Option<DirectedCycle> = None;
    for_each_simple_cycle(d, CYCLE_ENUM_CAP, |c| {
        if c.weight % 2 != 0 && best.as_ref().is_none_or(|b| c.weight < b.weight) {
            best = Some(c.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// Independence number (`Alpha`) or balanced bipartite independence number
/// (`Beta`: the largest `s` such that some `s` vertices of side A and `s` of
/// side B span no edge).
pub fn brute_independence(g: &ColoredGraph, mode: Mode) -> Result<usize> {
    check_cap(g.n(), INDEPENDENCE_CAP, "independence number")?;
    let nbr: Vec<u32> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &(w, _)| m | 1 << w))
        .collect();
    match mode {
        Mode::Alpha => Ok(max_independent(&nbr, mask_n(g.n()))),
        Mode::Beta => {
            let Some(sides) = g.sides() else {
                return Err(Error::Input("beta requires a bipartite graph".into()));
            };
            let a: Vec<usize> = (0..g.n()).filter(|&v| sides[v]).collect();
            let b_mask: u32 = (0..g.n()).filter(|&v| !sides[v]).fold(0, |m, v| m | 1 << v);
            let mut best = 0;
            for sub in 0u32..(1 << a.len()) {
                let mut blocked = 0u32;
                for (i, &v) in a.iter().enumerate() {
                    if sub >> i & 1 == 1 {
                        blocked |= nbr[v];
                    }
                }
                let free = (b_mask & !blocked).count_ones() as usize;
                best = best.max(free.min(sub.count_ones() as usize));
            }
            Ok(best)
        }
    }
}

fn mask_n(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn max_independent(nbr: &[u32], cand: u32) -> usize {
    if cand == 0 {
        return 0;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & !(1 << v);
    // degree-0 vertex within the candidates: always take it
    if nbr[v] & rest == 0 {
        return 1 + max_independent(nbr, rest);
    }
    let take = 1 + max_independent(nbr, rest & !nbr[v]);
    let skip = max_independent(nbr, rest);
    take.max(skip)
}
