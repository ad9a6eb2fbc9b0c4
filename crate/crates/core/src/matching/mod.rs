//! Extremal perfect matchings and monochromatic completion.

mod assignment;
mod cardinality;
mod weighted;

use crate::error::{input, Result};
use crate::graph::{Color, ColoredGraph, EdgeId, PerfectMatching};

pub(crate) use cardinality::maximum_matching;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// A perfect matching with the fewest (or most) red edges, or `None` when
/// `g` has no perfect matching.
///
/// Bipartite graphs go through the Hungarian method; general graphs through
/// the weighted blossom algorithm restricted to maximum cardinality.
pub fn extremal_red_pm(g: &ColoredGraph, direction: Direction) -> Option<PerfectMatching> {
    if g.n() % 2 == 1 {
        return None;
    }
    if g.n() == 0 {
        return PerfectMatching::new(g, []).ok();
    }
    let red_cost = match direction {
        Direction::Minimize => 1,
        Direction::Maximize => -1,
    };
    let mate = match g.sides() {
        Some(sides) => bipartite_extremal(g, sides, red_cost)?,
        None => {
            // maximise (2 - cost) over maximum-cardinality matchings
            let edges: Vec<(usize, usize, i64)> = g
                .edges()
                .iter()
                .map(|e| (e.u, e.v, if e.is_red() { 2 - red_cost } else { 2 }))
                .collect();
            weighted::max_weight_matching(g.n(), &edges, true)
        }
    };
    PerfectMatching::from_mates(g, &mate).ok()
}

fn bipartite_extremal(g: &ColoredGraph, sides: &[bool], red_cost: i64) -> Option<Vec<usize>> {
    let a: Vec<usize> = (0..g.n()).filter(|&v| sides[v]).collect();
    let b: Vec<usize> = (0..g.n()).filter(|&v| !sides[v]).collect();
    if a.len() != b.len() {
        return None;
    }
    let mut index_b = vec![NONE; g.n()];
    for (j, &v) in b.iter().enumerate() {
        index_b[v] = j;
    }
    let mut cost = vec![vec![None; b.len()]; a.len()];
    for (i, &u) in a.iter().enumerate() {
        for &(v, e) in g.neighbors(u) {
            cost[i][index_b[v]] = Some(if g.edge(e).is_red() { red_cost } else { 0 });
        }
    }
    let assign = assignment::min_cost_assignment(&cost)?;
    let mut mate = vec![NONE; g.n()];
    for (i, &j) in assign.iter().enumerate() {
        mate[a[i]] = b[j];
        mate[b[j]] = a[i];
    }
    Some(mate)
}

/// Completes `forced` to a perfect matching using only edges of `color`
/// for the remaining vertices.
pub fn complete_monochromatic(g: &ColoredGraph, forced: &[EdgeId], color: Color) -> Result<Option<PerfectMatching>> {
    let mut covered = vec![false; g.n()];
    for &e in forced {
        if !g.contains_edge(e) {
            return input(format!("edge id {} not in graph", e.0));
        }
        let ed = g.edge(e);
        if std::mem::replace(&mut covered[ed.u], true) || std::mem::replace(&mut covered[ed.v], true) {
            return input("forced edges share a vertex");
        }
    }
    Ok(complete_unchecked(g, &covered, forced, color))
}

/// `covered` must be exactly the vertex set of `forced`.
pub(crate) fn complete_unchecked(
    g: &ColoredGraph,
    covered: &[bool],
    forced: &[EdgeId],
    color: Color,
) -> Option<PerfectMatching> {
    let free = covered.iter().filter(|&&c| !c).count();
    if free % 2 == 1 {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            if covered[v] {
                return Vec::new();
            }
            g.neighbors(v)
                .iter()
                .filter(|&&(w, e)| !covered[w] && g.color(e) == color)
                .map(|&(w, _)| w)
                .collect()
        })
        .collect();
    let mate = maximum_matching(&adj);
    let mut edges = forced.to_vec();
    for v in 0..g.n() {
        if covered[v] {
            continue;
        }
        let w = mate[v];
        if w == NONE {
            return None;
        }
        if v < w {
            edges.push(g.edge_between(v, w).expect("matched along an edge"));
        }
    }
    PerfectMatching::new(g, edges).ok()
}

/// True iff `g` has a perfect matching.
pub fn pm_exists(g: &ColoredGraph) -> bool {
    if g.n() % 2 == 1 {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect()).collect();
    maximum_matching(&adj).iter().all(|&w| w != NONE)
}
