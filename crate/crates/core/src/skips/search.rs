//! Finders for signed skips, zero skip-cycle sets, small-weight chord cycles
//! and long monochromatic paths.

use std::collections::BTreeMap;

use super::{choose_spans, chords, enumerate_on, scan_pairs_bundles, CyclePath, Mode, Skip, SkipCycleSet};
use crate::error::{input, Result};
use crate::graph::{AlternatingCycle, AlternatingCycleSet, Color, ColoredGraph, PerfectMatching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn admits(self, w: i64) -> bool {
        match self {
            Sign::Negative => w < 0,
            Sign::Positive => w > 0,
        }
    }
}

/// Up to `t` pairwise disjoint skips of the requested sign, each contained
/// in `path` on cycle `c` (index `cycle` of its set).
///
/// The bundle-guided pass groups every `scale` bundles of the sign that the
/// skips should undo and takes one skip per group; if that yields fewer
/// than `t`, all skips of the sign inside the path are scheduled greedily by
/// earliest end, and for small `t` an exhaustive choice is tried last.
#[allow(clippy::too_many_arguments)]
pub fn find_signed_skips(
    g: &ColoredGraph,
    m: &PerfectMatching,
    c: &AlternatingCycle,
    cycle: usize,
    path: CyclePath,
    t: usize,
    sign: Sign,
    scale: u64,
    mode: Mode,
) -> Result<Vec<Skip>> {
    let l = c.len();
    if path.start >= l || path.len > l {
        return input("path does not fit on the cycle");
    }
    if t == 0 {
        return Ok(Vec::new());
    }
    let all: Vec<(Skip, Vec<CyclePath>)> = enumerate_on(g, m, c, cycle, mode)?
        .into_iter()
        .filter(|s| sign.admits(s.weight))
        .filter_map(|s| {
            let spans: Vec<CyclePath> = s.spans().into_iter().filter(|sp| path.contains(sp, l)).collect();
            (!spans.is_empty()).then_some((s, spans))
        })
        .collect();
    if all.is_empty() {
        return Ok(Vec::new());
    }

    // guided pass
    let scan = scan_pairs_bundles(g, m, c, path)?;
    let bundles = match sign {
        Sign::Negative => &scan.plus_bundles,
        Sign::Positive => &scan.minus_bundles,
    };
    let group = usize::try_from(scale.max(1)).unwrap_or(usize::MAX);
    let mut chosen: Vec<(usize, CyclePath)> = Vec::new();
    for grp in bundles.chunks(group).filter(|g| g.len() == group) {
        let first = scan.bundle_path(grp[0]);
        let last = scan.bundle_path(grp[grp.len() - 1]);
        let sub = CyclePath::new((path.start + first.start) % l, last.start + last.len - first.start);
        let pick = all.iter().enumerate().find_map(|(i, (_, spans))| {
            if chosen.iter().any(|&(j, _)| j == i) {
                return None;
            }
            spans
                .iter()
                .find(|sp| sub.contains(sp, l) && chosen.iter().all(|(_, c)| c.vertex_disjoint(sp, l)))
                .map(|&sp| (i, sp))
        });
        chosen.extend(pick);
        if chosen.len() >= t {
            break;
        }
    }

    if chosen.len() < t {
        // earliest-end scheduling over every (skip, footprint) inside the path
        let mut intervals: Vec<(usize, usize, usize, CyclePath)> = Vec::new();
        for (i, (_, spans)) in all.iter().enumerate() {
            for &sp in spans {
                let off = (sp.start + l - path.start) % l;
                intervals.push((off + sp.len, off, i, sp));
            }
        }
        intervals.sort();
        let mut greedy: Vec<(usize, CyclePath)> = Vec::new();
        for &(_, _, i, sp) in &intervals {
            if greedy.iter().all(|&(j, ref c)| j != i && c.vertex_disjoint(&sp, l)) {
                greedy.push((i, sp));
            }
        }
        if greedy.len() > chosen.len() {
            chosen = greedy;
        }
    }

    if chosen.len() < t && t <= 3 {
        let mut budget = 200_000u64;
        let mut stack = Vec::new();
        if exhaustive(&all, l, t, 0, &mut stack, &mut budget) {
            chosen = stack;
        }
    }

    chosen.truncate(t);
    chosen.sort_by_key(|&(i, _)| i);
    Ok(chosen.into_iter().map(|(i, _)| all[i].0.clone()).collect())
}

fn exhaustive(
    all: &[(Skip, Vec<CyclePath>)],
    l: usize,
    t: usize,
    from: usize,
    stack: &mut Vec<(usize, CyclePath)>,
    budget: &mut u64,
) -> bool {
    if stack.len() == t {
        return true;
    }
    for i in from..all.len() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        for &sp in &all[i].1 {
            if stack.iter().all(|(_, c)| c.vertex_disjoint(&sp, l)) {
                stack.push((i, sp));
                if exhaustive(all, l, t, i + 1, stack, budget) {
                    return true;
                }
                stack.pop();
            }
        }
    }
    false
}

/// Which existence lemma for zero skip-cycle sets has its hypotheses met.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// total weight at most `t`, some cycle of weight at least `2t`
    BoundedCycleWeights,
    /// total weight at most `t`, all cycles at most `2t`, at least `10t^3` cycles
    NotManyCycles,
    /// at most `10t^3` cycles, all at most `2t`, at least `1000t^6` edges of
    /// each colour
    NotManyRedAndBlue,
}

/// Checks the hypotheses of the three existence lemmas with parameter `t`.
pub fn lemma_preconditions(g: &ColoredGraph, cycles: &AlternatingCycleSet, t: u64) -> Option<Lemma> {
    let t = t as u128;
    let total = cycles.total_weight().unsigned_abs() as u128;
    let max_cycle = cycles.weights().iter().map(|w| w.unsigned_abs() as u128).max().unwrap_or(0);
    let count = cycles.len() as u128;
    let cube = t.saturating_mul(t).saturating_mul(t);
    if total <= t && max_cycle >= 2 * t {
        return Some(Lemma::BoundedCycleWeights);
    }
    if max_cycle > 2 * t {
        return None;
    }
    if total <= t && count >= cube.saturating_mul(10) {
        return Some(Lemma::NotManyCycles);
    }
    let red = cycles.cycles().iter().map(|c| c.red_count(g)).sum::<usize>() as u128;
    let blue = cycles.edge_count() as u128 - red;
    let need = cube.saturating_mul(cube).saturating_mul(1000);
    if count <= cube.saturating_mul(10) && red >= need && blue >= need {
        return Some(Lemma::NotManyRedAndBlue);
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroSearch {
    pub mode: Mode,
    /// lemma parameter, used to report which hypotheses held
    pub t: u64,
    /// node budget of the subset search
    pub node_budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSearchResult {
    pub set: Option<SkipCycleSet>,
    pub budget_exhausted: bool,
    pub lemma: Option<Lemma>,
}

const FAMILY_CAP: usize = 8;
const SUBSET_CAP: usize = 8;

/// Searches `cycles` (relative to `m`) for a skip-cycle set of weight 0.
///
/// Stages: a weight-0 cycle; a single 0-skip; opposite skip pairs, cycle
/// multisets and skip/cycle multisets; finally a bounded subset search over
/// disjoint skip families and cycles.
pub fn find_zero_skip_cycle_set(
    g: &ColoredGraph,
    m: &PerfectMatching,
    cycles: &AlternatingCycleSet,
    cfg: ZeroSearch,
) -> Result<ZeroSearchResult> {
    let lemma = lemma_preconditions(g, cycles, cfg.t);
    let done = |set: SkipCycleSet| {
        Ok(ZeroSearchResult {
            set: Some(set),
            budget_exhausted: false,
            lemma,
        })
    };
    let cs = cycles.cycles();
    let w = cycles.weights();

    if let Some(i) = (0..cs.len()).find(|&i| w[i] == 0) {
        return done(SkipCycleSet::new(cycles, Vec::new(), vec![i])?);
    }

    let mut per_cycle: Vec<Vec<Skip>> = Vec::with_capacity(cs.len());
    for (i, c) in cs.iter().enumerate() {
        per_cycle.push(enumerate_on(g, m, c, i, cfg.mode)?);
    }
    if let Some(s) = per_cycle.iter().flatten().find(|s| s.weight == 0) {
        return done(SkipCycleSet::new(cycles, vec![s.clone()], Vec::new())?);
    }

    // disjoint families per (cycle, weight)
    let mut families: BTreeMap<(i64, usize), Vec<Skip>> = BTreeMap::new();
    for (i, skips) in per_cycle.iter().enumerate() {
        for wt in (-4..=4).filter(|&x| x != 0) {
            let mut fam: Vec<Skip> = Vec::new();
            for s in skips.iter().filter(|s| s.weight == wt) {
                let mut trial: Vec<&Skip> = fam.iter().collect();
                trial.push(s);
                if choose_spans(&trial).is_some() {
                    fam.push(s.clone());
                    if fam.len() == FAMILY_CAP {
                        break;
                    }
                }
            }
            if !fam.is_empty() {
                families.insert((wt, i), fam);
            }
        }
    }

    // opposite-sign pairs
    let positives: Vec<&Skip> = per_cycle.iter().flatten().filter(|s| s.weight > 0).collect();
    let negatives: Vec<&Skip> = per_cycle.iter().flatten().filter(|s| s.weight < 0).collect();
    for p in &positives {
        for q in negatives.iter().filter(|q| q.weight == -p.weight) {
            if p.cycle != q.cycle || choose_spans(&[p, q]).is_some() {
                return done(SkipCycleSet::new(cycles, vec![(*p).clone(), (*q).clone()], Vec::new())?);
            }
        }
    }

    // pure cycle multisets
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &wt) in w.iter().enumerate() {
        by_weight.entry(wt).or_default().push(i);
    }
    for (&w1, pos) in by_weight.range(1..) {
        for (&wn, neg) in by_weight.range(..0) {
            let w2 = -wn;
            let gg = gcd(w1, w2);
            let (a, b) = ((w2 / gg) as usize, (w1 / gg) as usize);
            if pos.len() >= a && neg.len() >= b {
                let mut chosen: Vec<usize> = pos[..a].to_vec();
                chosen.extend_from_slice(&neg[..b]);
                return done(SkipCycleSet::new(cycles, Vec::new(), chosen)?);
            }
        }
    }

    // skips of weight s with cycles of weight c, same sign: p*s = q*c
    for s in (-4i64..=4).filter(|&x| x != 0) {
        for (&c, idx) in by_weight.iter().filter(|(&c, _)| c.signum() == s.signum()) {
            let gg = gcd(s.abs(), c.abs());
            let (p, q) = ((c.abs() / gg) as usize, (s.abs() / gg) as usize);
            if idx.len() < q {
                continue;
            }
            for order in [false, true] {
                let mut removed: Vec<usize> = if order {
                    idx[idx.len() - q..].to_vec()
                } else {
                    idx[..q].to_vec()
                };
                removed.sort_unstable();
                let picked: Vec<Skip> = families
                    .iter()
                    .filter(|(&(wt, host), _)| wt == s && removed.binary_search(&host).is_err())
                    .flat_map(|(_, fam)| fam.iter().cloned())
                    .take(p)
                    .collect();
                if picked.len() == p {
                    return done(SkipCycleSet::new(cycles, picked, removed)?);
                }
            }
        }
    }

    // bounded subset search
    let mut items: Vec<Item> = families
        .values()
        .flatten()
        .map(|s| Item::Skip(s.clone()))
        .collect();
    items.extend((0..cs.len()).map(Item::Cycle));
    let mut search = Subset {
        items: &items,
        weights: w,
        budget: cfg.node_budget,
        skips: Vec::new(),
        cycles: Vec::new(),
    };
    let found = search.run(0, 0);
    let exhausted = search.budget == 0;
    if found {
        let skips = search.skips.iter().map(|&i| items[i].skip().clone()).collect();
        let removed = search.cycles.clone();
        return done(SkipCycleSet::new(cycles, skips, removed)?);
    }
    Ok(ZeroSearchResult {
        set: None,
        budget_exhausted: exhausted,
        lemma,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

enum Item {
    Skip(Skip),
    Cycle(usize),
}

impl Item {
    fn skip(&self) -> &Skip {
        match self {
            Item::Skip(s) => s,
            Item::Cycle(_) => unreachable!(),
        }
    }
}

struct Subset<'a> {
    items: &'a [Item],
    weights: &'a [i64],
    budget: u64,
    skips: Vec<usize>,
    cycles: Vec<usize>,
}

impl Subset<'_> {
    fn run(&mut self, from: usize, total: i64) -> bool {
        if total == 0 && !(self.skips.is_empty() && self.cycles.is_empty()) {
            return true;
        }
        for i in from..self.items.len() {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            match &self.items[i] {
                Item::Skip(s) => {
                    if self.skips.len() == SUBSET_CAP || self.cycles.contains(&s.cycle) {
                        continue;
                    }
                    let mut same: Vec<&Skip> = self
                        .skips
                        .iter()
                        .map(|&j| self.items[j].skip())
                        .filter(|o| o.cycle == s.cycle)
                        .collect();
                    same.push(s);
                    if same.len() > 1 && choose_spans(&same).is_none() {
                        continue;
                    }
                    self.skips.push(i);
                    if self.run(i + 1, total + s.weight) {
                        return true;
                    }
                    self.skips.pop();
                }
                &Item::Cycle(c) => {
                    if self.cycles.len() == SUBSET_CAP
                        || self.skips.iter().any(|&j| self.items[j].skip().cycle == c)
                    {
                        continue;
                    }
                    self.cycles.push(c);
                    if self.run(i + 1, total - self.weights[c]) {
                        return true;
                    }
                    self.cycles.pop();
                }
            }
        }
        false
    }
}

/// A chord cycle through two stretches of `path` whose weight is in
/// `(0, 2]` for a blue path (`[-2, 0)` for red) and whose red (blue) edge
/// count equals the absolute weight.
pub fn find_small_weight_cycle(
    g: &ColoredGraph,
    m: &PerfectMatching,
    c: &AlternatingCycle,
    path: CyclePath,
    color: Color,
    mode: Mode,
) -> Result<Option<AlternatingCycle>> {
    if mode == Mode::Beta && !g.is_bipartite() {
        return input("bipartite mode needs a bipartite graph");
    }
    if !c.is_alternating(m) {
        return input("cycle is not alternating with respect to the matching");
    }
    let l = c.len();
    if path.start >= l || path.len > l {
        return input("path does not fit on the cycle");
    }
    let offset = |p: usize| (p + l - path.start) % l;
    let on_path = |p: usize| offset(p) <= path.len.min(l - 1);
    let ch: Vec<_> = chords(g, m, c)
        .into_iter()
        .filter(|k| on_path(k.i) && on_path(k.j))
        .map(|k| {
            let (a, b) = (offset(k.i), offset(k.j));
            (k.e, a.min(b), a.max(b))
        })
        .collect();
    let pos_at = |o: usize| (path.start + o) % l;
    let vertex = |o: usize| c.vertices()[pos_at(o)];
    // stretch [a, b] of path offsets must start and end on matching edges
    let good_arc = |a: usize, b: usize| (b - a) % 2 == 1 && m.contains(c.edges()[pos_at(a)]);
    for (x, &(e1, a1, b1)) in ch.iter().enumerate() {
        for &(e2, a2, b2) in &ch[x + 1..] {
            let mut o = [a1, b1, a2, b2];
            o.sort_unstable();
            if o.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let [o1, o2, o3, o4] = o;
            let pairs = [(a1, b1), (a2, b2)];
            let has = |p: usize, q: usize| pairs.contains(&(p, q));
            let verts: Vec<usize> = if has(o1, o3) && has(o2, o4) {
                // o1..o2, chord to o4, back to o3, chord to o1
                (o1..=o2).chain((o3..=o4).rev()).map(vertex).collect()
            } else if has(o1, o4) && has(o2, o3) {
                (o1..=o2).chain(o3..=o4).map(vertex).collect()
            } else {
                continue;
            };
            if !good_arc(o1, o2) || !good_arc(o3, o4) {
                continue;
            }
            let _ = (e1, e2);
            let cyc = AlternatingCycle::from_vertices(g, &verts)?;
            if !cyc.is_alternating(m) {
                continue;
            }
            let wt = cyc.weight(g, m);
            let ok = match color {
                Color::Blue => wt > 0 && wt <= 2 && cyc.red_count(g) as i64 == wt,
                Color::Red => (-2..0).contains(&wt) && (cyc.len() - cyc.red_count(g)) as i64 == -wt,
            };
            if ok {
                return Ok(Some(cyc));
            }
        }
    }
    Ok(None)
}

/// The longest maximal run of `color` edges over all cycles, as
/// `(cycle index, stretch)`, if it has at least `t` edges. A cycle entirely
/// of `color` yields a run of all but one of its edges.
pub fn find_long_mono_path(g: &ColoredGraph, cycles: &AlternatingCycleSet, t: usize, color: Color) -> Option<(usize, CyclePath)> {
    let mut best: Option<(usize, CyclePath)> = None;
    for (i, c) in cycles.cycles().iter().enumerate() {
        let l = c.len();
        let is = |p: usize| g.color(c.edges()[p % l]) == color;
        let runs: Vec<CyclePath> = match (0..l).find(|&p| !is(p)) {
            None => vec![CyclePath::new(0, l - 1)],
            Some(breakpoint) => {
                let mut out = Vec::new();
                let mut p = breakpoint + 1;
                let end = breakpoint + l;
                while p < end {
                    if is(p) {
                        let s = p;
                        while p < end && is(p) {
                            p += 1;
                        }
                        out.push(CyclePath::new(s % l, p - s));
                    } else {
                        p += 1;
                    }
                }
                out
            }
        };
        for r in runs {
            if best.is_none_or(|(_, b)| r.len > b.len) {
                best = Some((i, r));
            }
        }
    }
    best.filter(|(_, r)| r.len >= t && r.len > 0)
}
