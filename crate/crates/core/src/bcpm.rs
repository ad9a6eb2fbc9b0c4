//! Bounded correct parity matching: a perfect matching with at most `k` red
//! edges and red count congruent to `k` mod 2.

use log::warn;

use crate::error::{input, Error, Result};
use crate::graph::{toggle_edges, ColoredGraph, EdgeId, PerfectMatching};
use crate::matching::{extremal_red_pm, Direction};
use crate::mocp::{solve_mocp_with, WeightedDigraph};
use crate::oracles::{brute_decide, Problem};
use crate::par::Execution;

/// Orients `g` along `m0`: matching edges go from side A to side B, all
/// others back. Arc `i` is edge `i`; its weight is the matching-relative
/// weight of the edge. Directed cycles are exactly the `m0`-alternating
/// cycles.
pub fn orient_by_matching(g: &ColoredGraph, m0: &PerfectMatching) -> Result<(WeightedDigraph, Vec<i64>)> {
    let Some(sides) = g.sides() else {
        return input("orientation needs a bipartite graph");
    };
    if m0.vertex_count() != g.n() {
        return input("matching does not belong to the graph");
    }
    let mut arcs = Vec::with_capacity(g.m());
    let mut w0 = Vec::with_capacity(g.m());
    for id in g.edge_ids() {
        let e = g.edge(id);
        let (a, b) = if sides[e.u] { (e.u, e.v) } else { (e.v, e.u) };
        let w = m0.weight_of(g, id);
        if m0.contains(id) {
            arcs.push((a, b, w));
        } else {
            arcs.push((b, a, w));
        }
        w0.push(w);
    }
    Ok((WeightedDigraph::new(g.n(), arcs)?, w0))
}

/// Potentials from Bellman-Ford out of a virtual source joined to every
/// vertex by a 0-weight arc, and the reweighted arcs
/// `w0(u,v) + p(u) - p(v)`, which are non-negative.
pub fn reweight_nonnegative(d: &WeightedDigraph, w0: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    if w0.len() != d.arcs().len() {
        return input("one weight per arc expected");
    }
    let n = d.n();
    let mut p = vec![0i64; n];
    for round in 0..=n {
        let mut changed = false;
        for (a, arc) in d.arcs().iter().enumerate() {
            let cand = p[arc.tail] + w0[a];
            if cand < p[arc.head] {
                p[arc.head] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == n {
            return Err(Error::Precondition(
                "negative directed cycle: the base matching is not red-minimum".into(),
            ));
        }
    }
    let w = d
        .arcs()
        .iter()
        .enumerate()
        .map(|(a, arc)| w0[a] + p[arc.tail] - p[arc.head])
        .collect();
    Ok((w, p))
}

/// Polynomial BCPM solver for bipartite graphs.
pub fn solve_bcpm_bipartite(g: &ColoredGraph, k: usize) -> Result<Option<PerfectMatching>> {
    solve_bcpm_bipartite_with(g, k, Execution::default())
}

pub fn solve_bcpm_bipartite_with(g: &ColoredGraph, k: usize, exec: Execution) -> Result<Option<PerfectMatching>> {
    if !g.is_bipartite() {
        return input("the bipartite solver needs a bipartite graph");
    }
    let k = clamp_k(g, k);
    let Some(m0) = extremal_red_pm(g, Direction::Minimize) else {
        return Ok(None);
    };
    let r0 = m0.red_count();
    if r0 > k {
        return Ok(None);
    }
    if r0 % 2 == k % 2 {
        return Ok(Some(m0));
    }
    let (d, w0) = orient_by_matching(g, &m0)?;
    let (w, _) = reweight_nonnegative(&d, &w0)?;
    let Some(c) = solve_mocp_with(&d.with_weights(&w)?, exec)? else {
        return Ok(None);
    };
    if c.weight > (k - r0) as i64 {
        return Ok(None);
    }
    let edges: Vec<EdgeId> = c.arcs.iter().map(|&a| EdgeId(a)).collect();
    Ok(Some(toggle_edges(g, &m0, &edges)?))
}

/// Enumeration-based BCPM for any graph with at most `cap` vertices.
pub fn solve_bcpm_bruteforce(g: &ColoredGraph, k: usize, cap: usize) -> Result<Option<PerfectMatching>> {
    brute_decide(Problem::Bcpm, g, clamp_k(g, k), cap)
}

fn clamp_k(g: &ColoredGraph, k: usize) -> usize {
    let half = g.n() / 2;
    if k > half {
        warn!("k = {k} exceeds n/2 = {half}; clamped");
        return half;
    }
    k
}
