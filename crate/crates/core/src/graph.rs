//! Red/blue edge-coloured graphs, perfect matchings and alternating cycles.
//!
//! Vertices are dense indices `0..n`; edges carry stable [`EdgeId`]s equal to
//! their insertion order. The text formats in [`crate::format`] shift vertex
//! labels to `1..=n`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{input, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "r",
            Color::Blue => "b",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

impl Edge {
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn is_red(&self) -> bool {
        self.color == Color::Red
    }
}

/// A simple graph whose edges are coloured red or blue, optionally carrying
/// a bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, EdgeId)>>,
    lookup: HashMap<(usize, usize), EdgeId>,
    side_a: Option<Vec<bool>>,
}

impl ColoredGraph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range
    /// endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Color)>) -> Result<Self> {
        let mut g = ColoredGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            lookup: HashMap::new(),
            side_a: None,
        };
        for (u, v, color) in edges {
            g.push_edge(u, v, color)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: usize, v: usize, color: Color) -> Result<EdgeId> {
        if u >= self.n || v >= self.n {
            return input(format!("edge ({u}, {v}) has an endpoint outside 0..{}", self.n));
        }
        if u == v {
            return input(format!("self-loop at vertex {u}"));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if self.lookup.contains_key(&(a, b)) {
            return input(format!("duplicate edge ({a}, {b})"));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { u: a, v: b, color });
        self.adj[a].push((b, id));
        self.adj[b].push((a, id));
        self.lookup.insert((a, b), id);
        Ok(id)
    }

    /// Attaches a bipartition; `in_a[v]` tells whether `v` is on side A.
    pub fn with_bipartition(mut self, in_a: Vec<bool>) -> Result<Self> {
        if in_a.len() != self.n {
            return input("bipartition length differs from vertex count");
        }
        for e in &self.edges {
            if in_a[e.u] == in_a[e.v] {
                return input(format!("edge ({}, {}) does not cross the bipartition", e.u, e.v));
            }
        }
        self.side_a = Some(in_a);
        Ok(self)
    }

    /// Bipartition with side A = `0..n_a`.
    pub fn with_side_a_prefix(self, n_a: usize) -> Result<Self> {
        if n_a > self.n {
            return input("side A larger than the vertex set");
        }
        let in_a = (0..self.n).map(|v| v < n_a).collect();
        self.with_bipartition(in_a)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edges.len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.lookup.get(&key).copied()
    }

    /// Neighbours of `v` in ascending order, with the connecting edge.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adj[v]
    }

    pub fn is_bipartite(&self) -> bool {
        self.side_a.is_some()
    }

    pub fn sides(&self) -> Option<&[bool]> {
        self.side_a.as_deref()
    }

    /// Number of vertices on side A when the bipartition is the prefix
    /// `0..n_a`, the only shape the text format can express.
    pub fn side_a_prefix(&self) -> Option<usize> {
        let sides = self.side_a.as_ref()?;
        let n_a = sides.iter().take_while(|&&a| a).count();
        sides[n_a..].iter().all(|&a| !a).then_some(n_a)
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.edges[e.0].color
    }

    pub fn count_color(&self, color: Color) -> usize {
        self.edges.iter().filter(|e| e.color == color).count()
    }

    /// Same graph with red and blue exchanged.
    pub fn color_swapped(&self) -> ColoredGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.color = e.color.flip();
        }
        g
    }

    /// Subgraph keeping the edges with `keep[id]`; returns the new graph and
    /// the original id of every new edge.
    pub fn retain_edges(&self, keep: &[bool]) -> (ColoredGraph, Vec<EdgeId>) {
        let mut map = Vec::new();
        let kept = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(i, e)| {
                map.push(EdgeId(i));
                (e.u, e.v, e.color)
            });
        let mut g = ColoredGraph::new(self.n, kept).expect("subgraph of a simple graph is simple");
        g.side_a = self.side_a.clone();
        (g, map)
    }
}

/// A perfect matching of a specific host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectMatching {
    mate: Vec<usize>,
    edges: Vec<EdgeId>,
    in_m: Vec<bool>,
    red: usize,
}

impl PerfectMatching {
    /// Validates that `edges` is a perfect matching of `g`.
    pub fn new(g: &ColoredGraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut mate = vec![usize::MAX; g.n()];
        let mut in_m = vec![false; g.m()];
        let mut list = Vec::new();
        let mut red = 0;
        for e in edges {
            if !g.contains_edge(e) {
                return input(format!("edge id {} not in graph", e.0));
            }
            if in_m[e.0] {
                return input(format!("edge id {} listed twice", e.0));
            }
            let ed = g.edge(e);
            if mate[ed.u] != usize::MAX || mate[ed.v] != usize::MAX {
                return input(format!("vertex covered twice by edge ({}, {})", ed.u, ed.v));
            }
            mate[ed.u] = ed.v;
            mate[ed.v] = ed.u;
            in_m[e.0] = true;
            red += ed.is_red() as usize;
            list.push(e);
        }
        if let Some(v) = mate.iter().position(|&x| x == usize::MAX) {
            return input(format!("vertex {v} is not covered"));
        }
        list.sort_unstable();
        Ok(PerfectMatching {
            mate,
            edges: list,
            in_m,
            red,
        })
    }

    /// Builds a matching from a partner array.
    pub fn from_mates(g: &ColoredGraph, mate: &[usize]) -> Result<Self> {
        if mate.len() != g.n() {
            return input("mate array length differs from vertex count");
        }
        let mut edges = Vec::with_capacity(g.n() / 2);
        for (u, &v) in mate.iter().enumerate() {
            if v == usize::MAX || v >= g.n() {
                return input(format!("vertex {u} is not covered"));
            }
            if u < v {
                match g.edge_between(u, v) {
                    Some(e) => edges.push(e),
                    None => return input(format!("({u}, {v}) is not an edge")),
                }
            } else if mate[v] != u {
                return input(format!("inconsistent partner for vertex {u}"));
            }
        }
        PerfectMatching::new(g, edges)
    }

    #[inline]
    pub fn partner(&self, v: usize) -> usize {
        self.mate[v]
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_m.get(e.0).copied().unwrap_or(false)
    }

    /// Matching edges in ascending id order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of red matching edges, r(M).
    #[inline]
    pub fn red_count(&self) -> usize {
        self.red
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    /// Matching-relative weight of `e` without membership checks.
    #[inline]
    pub(crate) fn weight_of(&self, g: &ColoredGraph, e: EdgeId) -> i64 {
        match (g.color(e), self.in_m[e.0]) {
            (Color::Blue, _) => 0,
            (Color::Red, false) => 1,
            (Color::Red, true) => -1,
        }
    }

    fn check_host(&self, g: &ColoredGraph) -> Result<()> {
        if self.mate.len() != g.n() || self.in_m.len() != g.m() {
            return input("matching belongs to a different graph");
        }
        Ok(())
    }
}

/// Weight of a single edge relative to a matching: blue 0, red outside the
/// matching +1, red inside the matching -1.
pub fn edge_weight(g: &ColoredGraph, m: &PerfectMatching, e: EdgeId) -> Result<i64> {
    m.check_host(g)?;
    if !g.contains_edge(e) {
        return input(format!("edge id {} not in graph", e.0));
    }
    Ok(m.weight_of(g, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct WeightSum {
    pub weight: i64,
    pub red: usize,
}

/// Sum of matching-relative weights over an edge set, with its red count.
pub fn weight_sum(g: &ColoredGraph, m: &PerfectMatching, edges: &[EdgeId]) -> Result<WeightSum> {
    m.check_host(g)?;
    let mut acc = WeightSum::default();
    for &e in edges {
        if !g.contains_edge(e) {
            return input(format!("edge id {} not in graph", e.0));
        }
        acc.weight += m.weight_of(g, e);
        acc.red += g.edge(e).is_red() as usize;
    }
    Ok(acc)
}

/// A simple even cycle with a fixed orientation: `edges[i]` joins
/// `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingCycle {
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
}

impl AlternatingCycle {
    /// Builds a cycle through `vertices` (in cyclic order) and normalises the
    /// orientation: start at the smallest vertex, continue towards its
    /// smaller cycle neighbour.
    pub fn from_vertices(g: &ColoredGraph, vertices: &[usize]) -> Result<Self> {
        let len = vertices.len();
        if len < 4 || !len.is_multiple_of(2) {
            return input("alternating cycles have even length at least 4");
        }
        let mut seen = vec![false; g.n()];
        for &v in vertices {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return input("cycle vertices must be distinct vertices of the graph");
            }
        }
        let start = (0..len).min_by_key(|&i| vertices[i]).unwrap();
        let next = vertices[(start + 1) % len];
        let prev = vertices[(start + len - 1) % len];
        let order: Vec<usize> = if next < prev {
            (0..len).map(|i| vertices[(start + i) % len]).collect()
        } else {
            (0..len).map(|i| vertices[(start + len - i) % len]).collect()
        };
        let mut edges = Vec::with_capacity(len);
        for i in 0..len {
            let (a, b) = (order[i], order[(i + 1) % len]);
            match g.edge_between(a, b) {
                Some(e) => edges.push(e),
                None => return input(format!("({a}, {b}) is not an edge")),
            }
        }
        Ok(AlternatingCycle {
            vertices: order,
            edges,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn is_alternating(&self, m: &PerfectMatching) -> bool {
        let first = m.contains(self.edges[0]);
        self.edges
            .iter()
            .enumerate()
            .all(|(i, &e)| m.contains(e) == (first == (i % 2 == 0)))
    }

    pub fn weight(&self, g: &ColoredGraph, m: &PerfectMatching) -> i64 {
        self.edges.iter().map(|&e| m.weight_of(g, e)).sum()
    }

    pub fn red_count(&self, g: &ColoredGraph) -> usize {
        self.edges.iter().filter(|&&e| g.edge(e).is_red()).count()
    }

    /// True when every edge has the same colour.
    pub fn is_monochromatic(&self, g: &ColoredGraph) -> bool {
        let c = g.color(self.edges[0]);
        self.edges.iter().all(|&e| g.color(e) == c)
    }
}

/// Vertex-disjoint alternating cycles, typically a symmetric difference
/// `M Δ M'`, with weights taken relative to the base matching `M`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlternatingCycleSet {
    cycles: Vec<AlternatingCycle>,
    weights: Vec<i64>,
    total_weight: i64,
    edge_count: usize,
}

impl AlternatingCycleSet {
    pub(crate) fn from_cycles(g: &ColoredGraph, base: &PerfectMatching, cycles: Vec<AlternatingCycle>) -> Self {
        let weights: Vec<i64> = cycles.iter().map(|c| c.weight(g, base)).collect();
        AlternatingCycleSet {
            total_weight: weights.iter().sum(),
            edge_count: cycles.iter().map(|c| c.len()).sum(),
            cycles,
            weights,
        }
    }

    pub fn cycles(&self) -> &[AlternatingCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Base-relative weight of cycle `i`.
    pub fn cycle_weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn all_edges(&self) -> Vec<EdgeId> {
        self.cycles.iter().flat_map(|c| c.edges.iter().copied()).collect()
    }
}

/// Decomposes `M Δ M'` into alternating cycles, weighted relative to `m`.
pub fn sym_diff_cycles(g: &ColoredGraph, m: &PerfectMatching, m2: &PerfectMatching) -> Result<AlternatingCycleSet> {
    m.check_host(g)?;
    m2.check_host(g)?;
    let mut visited = vec![false; g.n()];
    let mut cycles = Vec::new();
    for start in 0..g.n() {
        if visited[start] || m.partner(start) == m2.partner(start) {
            continue;
        }
        // Walk alternately along M and M'; `start` is the smallest vertex of
        // its cycle because vertices are scanned in ascending order.
        let mut verts = vec![start];
        visited[start] = true;
        let mut cur = m.partner(start);
        let mut use_m = false;
        while cur != start {
            visited[cur] = true;
            verts.push(cur);
            cur = if use_m { m.partner(cur) } else { m2.partner(cur) };
            use_m = !use_m;
        }
        cycles.push(AlternatingCycle::from_vertices(g, &verts)?);
    }
    Ok(AlternatingCycleSet::from_cycles(g, m, cycles))
}

/// Returns `m Δ edges`, failing unless the result is a perfect matching.
pub fn toggle_edges(g: &ColoredGraph, m: &PerfectMatching, edges: &[EdgeId]) -> Result<PerfectMatching> {
    m.check_host(g)?;
    let mut flip = vec![false; g.m()];
    for &e in edges {
        if !g.contains_edge(e) {
            return input(format!("edge id {} not in graph", e.0));
        }
        flip[e.0] = !flip[e.0];
    }
    let result = g.edge_ids().filter(|&e| m.contains(e) != flip[e.0]);
    PerfectMatching::new(g, result)
        .map_err(|err| Error::Input(format!("toggled edge set is not a perfect matching ({err})")))
}

/// Toggles vertex-disjoint `m`-alternating cycles into `m`.
pub fn toggle(g: &ColoredGraph, m: &PerfectMatching, cycles: &[AlternatingCycle]) -> Result<PerfectMatching> {
    m.check_host(g)?;
    let mut used = vec![false; g.n()];
    let mut edges = Vec::new();
    for c in cycles {
        if c.edges.iter().any(|&e| !g.contains_edge(e)) {
            return input("cycle edge not in graph");
        }
        if !c.is_alternating(m) {
            return input("cycle is not alternating with respect to the matching");
        }
        for &v in &c.vertices {
            if std::mem::replace(&mut used[v], true) {
                return input("cycles are not vertex-disjoint");
            }
        }
        edges.extend_from_slice(&c.edges);
    }
    toggle_edges(g, m, &edges)
}

/// Edges of the path from `u` to `v` following the cycle's orientation.
pub fn cycle_path(c: &AlternatingCycle, u: usize, v: usize) -> Result<Vec<EdgeId>> {
    let (Some(i), Some(j)) = (c.position_of(u), c.position_of(v)) else {
        return input("vertex not on cycle");
    };
    let len = c.len();
    let steps = (j + len - i) % len;
    Ok((0..steps).map(|s| c.edges[(i + s) % len]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ColoredGraph {
        // 0-1 red, 1-2 blue, 2-3 red, 3-0 blue
        ColoredGraph::new(
            4,
            [(0, 1, Color::Red), (1, 2, Color::Blue), (2, 3, Color::Red), (3, 0, Color::Blue)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(ColoredGraph::new(3, [(1, 1, Color::Red)]).is_err());
        assert!(ColoredGraph::new(3, [(0, 1, Color::Red), (1, 0, Color::Blue)]).is_err());
        assert!(ColoredGraph::new(2, [(0, 2, Color::Red)]).is_err());
    }

    #[test]
    fn bipartition_must_be_crossing() {
        let g = ColoredGraph::new(4, [(0, 1, Color::Red)]).unwrap();
        assert!(g.clone().with_side_a_prefix(2).is_err());
        assert!(g.with_bipartition(vec![true, false, true, false]).is_ok());
    }

    #[test]
    fn edge_weights_follow_the_definition() {
        let g = square();
        let m = PerfectMatching::new(&g, [EdgeId(0), EdgeId(2)]).unwrap();
        assert_eq!(edge_weight(&g, &m, EdgeId(1)).unwrap(), 0);
        assert_eq!(edge_weight(&g, &m, EdgeId(0)).unwrap(), -1);
        let m2 = PerfectMatching::new(&g, [EdgeId(1), EdgeId(3)]).unwrap();
        assert_eq!(edge_weight(&g, &m2, EdgeId(0)).unwrap(), 1);
        assert!(edge_weight(&g, &m, EdgeId(9)).is_err());
        assert_eq!(weight_sum(&g, &m, &[]).unwrap(), WeightSum::default());
    }

    #[test]
    fn identical_matchings_have_empty_difference() {
        let g = square();
        let m = PerfectMatching::new(&g, [EdgeId(0), EdgeId(2)]).unwrap();
        assert!(sym_diff_cycles(&g, &m, &m).unwrap().is_empty());
    }

    #[test]
    fn square_difference_is_one_cycle() {
        let g = square();
        let m = PerfectMatching::new(&g, [EdgeId(1), EdgeId(3)]).unwrap();
        let m2 = PerfectMatching::new(&g, [EdgeId(0), EdgeId(2)]).unwrap();
        let d = sym_diff_cycles(&g, &m, &m2).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.cycles()[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(d.total_weight(), 2);
        let back = toggle(&g, &m, d.cycles()).unwrap();
        assert_eq!(back, m2);
        assert_eq!(back.red_count(), m.red_count() + 2);
        assert_eq!(toggle(&g, &back, d.cycles()).unwrap(), m);
    }

    #[test]
    fn perfect_matching_validation() {
        let g = square();
        assert!(PerfectMatching::new(&g, [EdgeId(0)]).is_err());
        assert!(PerfectMatching::new(&g, [EdgeId(0), EdgeId(1)]).is_err());
        assert!(PerfectMatching::from_mates(&g, &[1, 0, 3, 2]).is_ok());
        assert!(PerfectMatching::from_mates(&g, &[2, 3, 0, 1]).is_err());
    }

    #[test]
    fn hexagon_paths() {
        let g = ColoredGraph::new(6, (0..6).map(|i| (i, (i + 1) % 6, Color::Blue))).unwrap();
        let c = AlternatingCycle::from_vertices(&g, &[3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3, 4, 5]);
        assert!(cycle_path(&c, 2, 2).unwrap().is_empty());
        assert_eq!(cycle_path(&c, 1, 2).unwrap().len(), 1);
        let there = cycle_path(&c, 0, 3).unwrap();
        let back = cycle_path(&c, 3, 0).unwrap();
        assert_eq!((there.len(), back.len()), (3, 3));
        let mut all: Vec<_> = there.into_iter().chain(back).collect();
        all.sort();
        assert_eq!(all, (0..6).map(EdgeId).collect::<Vec<_>>());
        assert!(cycle_path(&c, 0, 7).is_err());
    }
}
