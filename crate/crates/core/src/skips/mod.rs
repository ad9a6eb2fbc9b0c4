//! Skips and biskips: chord surgery that shortens an alternating cycle while
//! moving its weight by at most 4.
//!
//! Positions refer to the host cycle's fixed orientation: `vertices[i]` is
//! position `i` and edge `i` joins positions `i` and `i + 1`.

mod scan;
mod search;

pub use scan::{scan_pairs_bundles, Pair, PairScan};
pub use search::{
    find_long_mono_path, find_signed_skips, find_small_weight_cycle, find_zero_skip_cycle_set, lemma_preconditions,
    Lemma, Sign, ZeroSearch, ZeroSearchResult,
};

use crate::error::{input, Result};
use crate::graph::{
    sym_diff_cycles, toggle_edges, AlternatingCycle, AlternatingCycleSet, ColoredGraph, EdgeId, PerfectMatching,
};

/// General graphs use skips (parameter alpha); bipartite graphs use biskips
/// (parameter beta).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkipKind {
    /// two crossing chords; the cycle shrinks to one cycle
    Skip,
    /// one chord or two non-crossing chords; the cycle splits into one or
    /// two cycles
    Biskip,
}

/// A stretch of consecutive cycle edges: edges `start, start + 1, ...,
/// start + len - 1` (mod the cycle length). It covers positions `start`
/// through `start + len`. `len` equal to the cycle length stands for the
/// whole cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclePath {
    pub start: usize,
    pub len: usize,
}

impl CyclePath {
    pub fn new(start: usize, len: usize) -> Self {
        CyclePath { start, len }
    }

    /// Edge positions in path order.
    pub fn edge_positions(&self, cycle_len: usize) -> impl Iterator<Item = usize> + '_ {
        let (s, l) = (self.start, self.len);
        (0..l).map(move |i| (s + i) % cycle_len)
    }

    /// True if `other` lies inside `self`.
    pub fn contains(&self, other: &CyclePath, cycle_len: usize) -> bool {
        if self.len >= cycle_len {
            return other.len <= cycle_len;
        }
        (other.start + cycle_len - self.start) % cycle_len + other.len <= self.len
    }

    /// True if the two stretches share no position (vertex).
    pub fn vertex_disjoint(&self, other: &CyclePath, cycle_len: usize) -> bool {
        let d1 = (other.start + cycle_len - self.start) % cycle_len;
        let d2 = (self.start + cycle_len - other.start) % cycle_len;
        d1 > self.len && d2 > other.len
    }

    pub fn edges<'a>(&'a self, c: &'a AlternatingCycle) -> impl Iterator<Item = EdgeId> + 'a {
        self.edge_positions(c.len()).map(move |p| c.edges()[p])
    }
}

/// A skip or biskip on cycle `cycle` of some cycle set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skip {
    pub kind: SkipKind,
    pub cycle: usize,
    pub chords: Vec<EdgeId>,
    /// Removed stretches; every one has odd length and starts with a
    /// non-matching edge.
    pub removed: Vec<CyclePath>,
    /// Stretches that survive; together with `removed` they tile the cycle.
    pub kept: Vec<CyclePath>,
    /// w(C') - w(C), equivalently chord weight minus removed weight.
    pub weight: i64,
    host_len: usize,
    anchors: Vec<(usize, usize)>,
}

impl Skip {
    pub fn host_len(&self) -> usize {
        self.host_len
    }

    /// Stretches that may serve as the skip's footprint: the complement of
    /// either kept stretch. Two skips are disjoint when some choice of
    /// footprints is vertex-disjoint.
    pub fn spans(&self) -> Vec<CyclePath> {
        let l = self.host_len;
        self.kept
            .iter()
            .map(|k| CyclePath::new((k.start + k.len) % l, l - k.len))
            .collect()
    }

    /// Number of edges the host cycle loses.
    pub fn shrinkage(&self) -> usize {
        self.removed.iter().map(|r| r.len).sum::<usize>() - self.chords.len()
    }

    /// Whether the skip still refers to `c` (same length, same vertices at
    /// the chord endpoints).
    pub fn matches_host(&self, c: &AlternatingCycle) -> bool {
        c.len() == self.host_len && self.anchors.iter().all(|&(p, v)| c.vertices()[p] == v)
    }

    /// Edges of the cycle(s) replacing the host.
    pub fn replacement_edges(&self, c: &AlternatingCycle) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.kept.iter().flat_map(|k| k.edges(c)).collect();
        out.extend_from_slice(&self.chords);
        out
    }

    /// The cycles replacing the host, as alternating cycles of `g`.
    pub fn result_cycles(&self, g: &ColoredGraph, c: &AlternatingCycle) -> Result<Vec<AlternatingCycle>> {
        let edges = self.replacement_edges(c);
        cycles_of_edge_set(g, &edges)
    }
}

/// Splits a 2-regular edge set into its cycles.
pub(crate) fn cycles_of_edge_set(g: &ColoredGraph, edges: &[EdgeId]) -> Result<Vec<AlternatingCycle>> {
    let mut inc: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &e in edges {
        let ed = g.edge(e);
        inc.entry(ed.u).or_default().push(ed.v);
        inc.entry(ed.v).or_default().push(ed.u);
    }
    if inc.values().any(|l| l.len() != 2) {
        return input("edge set is not 2-regular");
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &start in inc.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut verts = vec![start];
        seen.insert(start);
        let (mut prev, mut cur) = (start, inc[&start][0]);
        while cur != start {
            seen.insert(cur);
            verts.push(cur);
            let nb = &inc[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        out.push(AlternatingCycle::from_vertices(g, &verts)?);
    }
    Ok(out)
}

struct CycleView<'a> {
    c: &'a AlternatingCycle,
    len: usize,
    in_m: Vec<bool>,
    prefix: Vec<i64>,
}

impl<'a> CycleView<'a> {
    fn new(g: &ColoredGraph, m: &PerfectMatching, c: &'a AlternatingCycle) -> Self {
        let len = c.len();
        let in_m: Vec<bool> = c.edges().iter().map(|&e| m.contains(e)).collect();
        let mut prefix = Vec::with_capacity(2 * len + 1);
        prefix.push(0);
        for i in 0..2 * len {
            let w = m.weight_of(g, c.edges()[i % len]);
            prefix.push(prefix[i] + w);
        }
        CycleView { c, len, in_m, prefix }
    }

    fn weight(&self, p: CyclePath) -> i64 {
        self.prefix[p.start + p.len] - self.prefix[p.start]
    }

    fn arc(&self, from: usize, to: usize) -> CyclePath {
        CyclePath::new(from, (to + self.len - from) % self.len)
    }

    /// Odd length and first edge outside the matching.
    fn removable(&self, p: CyclePath) -> bool {
        p.len % 2 == 1 && !self.in_m[p.start]
    }
}

struct Chord {
    e: EdgeId,
    i: usize,
    j: usize,
    w: i64,
}

fn chords(g: &ColoredGraph, m: &PerfectMatching, c: &AlternatingCycle) -> Vec<Chord> {
    let len = c.len();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in c.vertices().iter().enumerate() {
        pos[v] = i;
    }
    let mut out = Vec::new();
    for (i, &v) in c.vertices().iter().enumerate() {
        for &(x, e) in g.neighbors(v) {
            let j = pos[x];
            if j == usize::MAX || j <= i || j == i + 1 || (i == 0 && j == len - 1) || m.contains(e) {
                continue;
            }
            out.push(Chord {
                e,
                i,
                j,
                w: m.weight_of(g, e),
            });
        }
    }
    out.sort_by_key(|c| c.e);
    out
}

/// All skips (alpha) or biskips (beta) of the `m`-alternating cycle `c`,
/// ordered by chord ids.
pub fn enumerate_skips(g: &ColoredGraph, m: &PerfectMatching, c: &AlternatingCycle, mode: Mode) -> Result<Vec<Skip>> {
    enumerate_on(g, m, c, 0, mode)
}

pub(crate) fn enumerate_on(
    g: &ColoredGraph,
    m: &PerfectMatching,
    c: &AlternatingCycle,
    cycle: usize,
    mode: Mode,
) -> Result<Vec<Skip>> {
    if mode == Mode::Beta && !g.is_bipartite() {
        return input("biskips need a bipartite graph");
    }
    if c.vertices().iter().any(|&v| v >= g.n()) || c.edges().iter().any(|&e| !g.contains_edge(e)) {
        return input("cycle does not belong to the graph");
    }
    if !c.is_alternating(m) {
        return input("cycle is not alternating with respect to the matching");
    }
    let view = CycleView::new(g, m, c);
    let ch = chords(g, m, c);
    let mut out = Vec::new();
    let mut emit = |kind, chords: Vec<&Chord>, removed: Vec<CyclePath>, kept: Vec<CyclePath>| {
        if !removed.iter().all(|&r| view.removable(r)) {
            return;
        }
        if removed.iter().map(|r| r.len).sum::<usize>() <= chords.len() {
            return;
        }
        let weight = chords.iter().map(|c| c.w).sum::<i64>() - removed.iter().map(|&r| view.weight(r)).sum::<i64>();
        if weight.abs() > 4 {
            return;
        }
        let mut anchors: Vec<(usize, usize)> = chords
            .iter()
            .flat_map(|c| [(c.i, view.c.vertices()[c.i]), (c.j, view.c.vertices()[c.j])])
            .collect();
        anchors.sort_unstable();
        out.push(Skip {
            kind,
            cycle,
            chords: chords.iter().map(|c| c.e).collect(),
            removed,
            kept,
            weight,
            host_len: view.len,
            anchors,
        });
    };
    match mode {
        Mode::Alpha => {
            for (x, c1) in ch.iter().enumerate() {
                for c2 in &ch[x + 1..] {
                    let mut p = [c1.i, c1.j, c2.i, c2.j];
                    p.sort_unstable();
                    if p.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let inside = |q: usize| c1.i < q && q < c1.j;
                    if inside(c2.i) == inside(c2.j) {
                        continue;
                    }
                    let [a, b, cc, d] = p;
                    emit(
                        SkipKind::Skip,
                        vec![c1, c2],
                        vec![view.arc(a, b), view.arc(cc, d)],
                        vec![view.arc(b, cc), view.arc(d, a)],
                    );
                    emit(
                        SkipKind::Skip,
                        vec![c1, c2],
                        vec![view.arc(b, cc), view.arc(d, a)],
                        vec![view.arc(a, b), view.arc(cc, d)],
                    );
                }
            }
        }
        Mode::Beta => {
            for c1 in &ch {
                let fwd = view.arc(c1.i, c1.j);
                let back = view.arc(c1.j, c1.i);
                emit(SkipKind::Biskip, vec![c1], vec![fwd], vec![back]);
                emit(SkipKind::Biskip, vec![c1], vec![back], vec![fwd]);
            }
            for (x, c1) in ch.iter().enumerate() {
                for c2 in &ch[x + 1..] {
                    let mut p = [c1.i, c1.j, c2.i, c2.j];
                    p.sort_unstable();
                    if p.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let inside = |q: usize| c1.i < q && q < c1.j;
                    if inside(c2.i) != inside(c2.j) {
                        continue;
                    }
                    let [p1, p2, p3, p4] = p;
                    let side_by_side = (c1.i, c1.j) == (p1, p2) || (c1.i, c1.j) == (p3, p4);
                    if side_by_side {
                        emit(
                            SkipKind::Biskip,
                            vec![c1, c2],
                            vec![view.arc(p2, p3), view.arc(p4, p1)],
                            vec![view.arc(p1, p2), view.arc(p3, p4)],
                        );
                    } else {
                        emit(
                            SkipKind::Biskip,
                            vec![c1, c2],
                            vec![view.arc(p1, p2), view.arc(p3, p4)],
                            vec![view.arc(p2, p3), view.arc(p4, p1)],
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Picks one footprint per skip so that all are pairwise vertex-disjoint.
/// All skips must share the host cycle.
pub(crate) fn choose_spans(skips: &[&Skip]) -> Option<Vec<CyclePath>> {
    fn rec(skips: &[&Skip], chosen: &mut Vec<CyclePath>) -> bool {
        let Some(s) = skips.get(chosen.len()) else {
            return true;
        };
        let l = s.host_len;
        for span in s.spans() {
            if chosen.iter().all(|c| c.vertex_disjoint(&span, l)) {
                chosen.push(span);
                if rec(skips, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    rec(skips, &mut chosen).then_some(chosen)
}

/// Disjoint skips plus whole cycles of a cycle set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkipCycleSet {
    pub skips: Vec<Skip>,
    pub cycles: Vec<usize>,
    /// Sum of skip weights minus sum of removed cycle weights.
    pub weight: i64,
}

impl SkipCycleSet {
    /// Checks disjointness and computes the weight against `cycles`.
    pub fn new(cycles: &AlternatingCycleSet, skips: Vec<Skip>, mut removed: Vec<usize>) -> Result<Self> {
        removed.sort_unstable();
        if removed.windows(2).any(|w| w[0] == w[1]) {
            return input("cycle listed twice");
        }
        if let Some(&i) = removed.iter().find(|&&i| i >= cycles.len()) {
            return input(format!("cycle index {i} out of range"));
        }
        for s in &skips {
            if s.cycle >= cycles.len() || !s.matches_host(&cycles.cycles()[s.cycle]) {
                return input("skip does not match its host cycle");
            }
            if removed.binary_search(&s.cycle).is_ok() {
                return input("skip lies on a removed cycle");
            }
        }
        let mut hosts: Vec<usize> = skips.iter().map(|s| s.cycle).collect();
        hosts.sort_unstable();
        hosts.dedup();
        for h in hosts {
            let on: Vec<&Skip> = skips.iter().filter(|s| s.cycle == h).collect();
            if choose_spans(&on).is_none() {
                return input("skips on one cycle overlap");
            }
        }
        let weight = skips.iter().map(|s| s.weight).sum::<i64>() - removed.iter().map(|&i| cycles.cycle_weight(i)).sum::<i64>();
        Ok(SkipCycleSet {
            skips,
            cycles: removed,
            weight,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.skips.is_empty() && self.cycles.is_empty()
    }
}

/// Uses a single skip: `cycles` is `m Δ m_other` (weights relative to `m`);
/// returns the new cycle set and the modified `m_other`.
pub fn use_skip(
    g: &ColoredGraph,
    m: &PerfectMatching,
    m_other: &PerfectMatching,
    cycles: &AlternatingCycleSet,
    s: &Skip,
) -> Result<(AlternatingCycleSet, PerfectMatching)> {
    let set = SkipCycleSet::new(cycles, vec![s.clone()], Vec::new())?;
    use_skip_cycle_set(g, m, m_other, cycles, &set)
}

/// Uses every skip of the set and drops its cycles. `r(m_other)` moves by
/// the set's weight and the symmetric difference strictly shrinks.
pub fn use_skip_cycle_set(
    g: &ColoredGraph,
    m: &PerfectMatching,
    m_other: &PerfectMatching,
    cycles: &AlternatingCycleSet,
    set: &SkipCycleSet,
) -> Result<(AlternatingCycleSet, PerfectMatching)> {
    if set.is_empty() {
        return input("empty skip-cycle set");
    }
    // revalidate against the current cycles
    let checked = SkipCycleSet::new(cycles, set.skips.clone(), set.cycles.clone())?;
    let mut edges = Vec::new();
    for (i, c) in cycles.cycles().iter().enumerate() {
        if checked.cycles.binary_search(&i).is_ok() {
            continue;
        }
        let on: Vec<&Skip> = checked.skips.iter().filter(|s| s.cycle == i).collect();
        if on.is_empty() {
            edges.extend_from_slice(c.edges());
            continue;
        }
        let mut drop = vec![false; c.len()];
        for s in &on {
            for r in &s.removed {
                for p in r.edge_positions(c.len()) {
                    drop[p] = true;
                }
            }
            edges.extend_from_slice(&s.chords);
        }
        edges.extend(c.edges().iter().enumerate().filter(|(p, _)| !drop[*p]).map(|(_, &e)| e));
    }
    let new_other = toggle_edges(g, m, &edges)?;
    let new_cycles = sym_diff_cycles(g, m, &new_other)?;
    if new_cycles.edge_count() >= cycles.edge_count() {
        return input("skip-cycle set did not shrink the symmetric difference");
    }
    debug_assert_eq!(
        new_other.red_count() as i64,
        m_other.red_count() as i64 + checked.weight
    );
    Ok((new_cycles, new_other))
}
