//! Minimum odd-weight directed cycles.
//!
//! Every odd cycle contains an arc of odd weight, so the optimum is the best
//! over odd arcs `e = (u, v)` of `w(e)` plus a shortest even-weight `v -> u`
//! walk avoiding `e`. Even-weight walks are shortest paths between layer 0
//! copies in the parity-layered digraph on `V x {0, 1}`, where odd arcs
//! switch layers. The resulting closed walk is then cut down to a simple odd
//! cycle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{input, Error, Result};
use crate::par::{self, Execution};

/// Largest admissible arc weight magnitude.
pub const MAX_WEIGHT: i64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
}

/// A digraph with integer arc weights. Parallel arcs and loops are allowed;
/// arcs are identified by their index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        let mut d = WeightedDigraph {
            n,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
        };
        for (tail, head, weight) in arcs {
            if tail >= n || head >= n {
                return input(format!("arc ({tail}, {head}) has an endpoint outside 0..{n}"));
            }
            if weight.abs() > MAX_WEIGHT {
                return input(format!("arc weight {weight} exceeds 2^31"));
            }
            d.out[tail].push(d.arcs.len());
            d.arcs.push(Arc { tail, head, weight });
        }
        Ok(d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    /// Ids of the arcs leaving `v`, ascending.
    #[inline]
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Same arcs with replaced weights.
    pub fn with_weights(&self, weights: &[i64]) -> Result<Self> {
        if weights.len() != self.arcs.len() {
            return input("weight vector length differs from arc count");
        }
        WeightedDigraph::new(
            self.n,
            self.arcs.iter().zip(weights).map(|(a, &w)| (a.tail, a.head, w)),
        )
    }

    fn require_nonnegative(&self) -> Result<()> {
        match self.arcs.iter().position(|a| a.weight < 0) {
            Some(i) => input(format!("arc {i} has negative weight {}", self.arcs[i].weight)),
            None => Ok(()),
        }
    }

    fn sum(&self, arcs: &[usize]) -> Result<i64> {
        arcs.iter().try_fold(0i64, |acc, &a| {
            acc.checked_add(self.arcs[a].weight)
                .ok_or_else(|| Error::Input("walk weight overflows".into()))
        })
    }
}

/// `vertices[i] --arcs[i]--> vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub arcs: Vec<usize>,
}

impl Walk {
    pub fn new(d: &WeightedDigraph, vertices: Vec<usize>, arcs: Vec<usize>) -> Result<Self> {
        if vertices.len() != arcs.len() + 1 {
            return input("a walk has one more vertex than arcs");
        }
        for (i, &a) in arcs.iter().enumerate() {
            if a >= d.arcs.len() {
                return input(format!("arc id {a} not in digraph"));
            }
            let arc = d.arc(a);
            if arc.tail != vertices[i] || arc.head != vertices[i + 1] {
                return input(format!("arc {a} does not connect walk positions {i} and {}", i + 1));
            }
        }
        Ok(Walk { vertices, arcs })
    }

    pub fn is_closed(&self) -> bool {
        !self.arcs.is_empty() && self.vertices.first() == self.vertices.last()
    }

    pub fn weight(&self, d: &WeightedDigraph) -> i64 {
        self.arcs.iter().map(|&a| d.arc(a).weight).sum()
    }
}

/// A directed cycle without repeated vertices; `arcs[i]` leaves
/// `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedCycle {
    pub vertices: Vec<usize>,
    pub arcs: Vec<usize>,
    pub weight: i64,
}

impl DirectedCycle {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Checks that the arcs form a simple closed walk with the stated weight.
    pub fn is_valid(&self, d: &WeightedDigraph) -> bool {
        let k = self.arcs.len();
        if k == 0 || self.vertices.len() != k {
            return false;
        }
        let mut seen = vec![false; d.n()];
        for i in 0..k {
            let v = self.vertices[i];
            if v >= d.n() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
            let Some(arc) = d.arcs.get(self.arcs[i]) else {
                return false;
            };
            if arc.tail != v || arc.head != self.vertices[(i + 1) % k] {
                return false;
            }
        }
        self.arcs.iter().map(|&a| d.arc(a).weight).sum::<i64>() == self.weight
    }
}

/// Cuts an odd closed walk down to a simple odd cycle of no larger weight.
///
/// Scanning the walk, the first repeated vertex splits it into a closed
/// sub-walk and the rest; one of them is odd. Keeping a stack of the open
/// prefix makes each split O(1) amortised, so the whole pass is linear in
/// the walk length.
pub fn extract_odd_cycle(d: &WeightedDigraph, z: &Walk) -> Result<DirectedCycle> {
    let z = Walk::new(d, z.vertices.clone(), z.arcs.clone())?;
    if !z.is_closed() {
        return input("walk is not closed");
    }
    d.require_nonnegative()?;
    if d.sum(&z.arcs)? % 2 == 0 {
        return input("walk weight is even");
    }
    let mut pos = vec![usize::MAX; d.n()];
    // stack of (vertex, arc leaving it)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let k = z.arcs.len();
    for i in 0..=k {
        let v = z.vertices[i];
        if pos[v] != usize::MAX {
            let start = pos[v];
            let cycle: Vec<(usize, usize)> = stack[start..].to_vec();
            let weight: i64 = cycle.iter().map(|&(_, a)| d.arc(a).weight).sum();
            if weight % 2 != 0 {
                return Ok(DirectedCycle {
                    vertices: cycle.iter().map(|c| c.0).collect(),
                    arcs: cycle.iter().map(|c| c.1).collect(),
                    weight,
                });
            }
            for &(u, _) in &cycle {
                pos[u] = usize::MAX;
            }
            stack.truncate(start);
        }
        if i < k {
            pos[v] = stack.len();
            stack.push((v, z.arcs[i]));
        }
    }
    unreachable!("an odd closed walk always contains an odd simple cycle")
}

/// Minimum-weight closed walk of odd weight that uses `e` exactly once,
/// starting and ending at the tail of `e`.
pub fn min_odd_closed_walk_through(d: &WeightedDigraph, e: usize) -> Result<Option<Walk>> {
    if e >= d.arcs.len() {
        return input(format!("arc id {e} not in digraph"));
    }
    d.require_nonnegative()?;
    let arc = *d.arc(e);
    if arc.weight % 2 == 0 {
        return input("arc weight is even");
    }
    let Some((verts, arcs)) = even_shortest_path(d, arc.head, arc.tail, e) else {
        return Ok(None);
    };
    let mut vertices = vec![arc.tail];
    vertices.extend(verts);
    let mut all = vec![e];
    all.extend(arcs);
    Walk::new(d, vertices, all).map(Some)
}

/// Shortest even-weight walk from `s` to `t` in `d` minus `skip`, as Dijkstra
/// over the parity layers. Returns its vertices (starting at `s`) and arcs.
fn even_shortest_path(d: &WeightedDigraph, s: usize, t: usize, skip: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let node = |v: usize, layer: usize| 2 * v + layer;
    let total = 2 * d.n();
    let mut dist = vec![i64::MAX; total];
    let mut pred: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); total];
    let mut heap = BinaryHeap::new();
    dist[node(s, 0)] = 0;
    heap.push(Reverse((0i64, node(s, 0))));
    let goal = node(t, 0);
    while let Some(Reverse((du, x))) = heap.pop() {
        if du > dist[x] {
            continue;
        }
        if x == goal {
            break;
        }
        let (v, layer) = (x / 2, x % 2);
        for &a in d.out_arcs(v) {
            if a == skip {
                continue;
            }
            let arc = d.arc(a);
            let y = node(arc.head, layer ^ (arc.weight & 1) as usize);
            let nd = du + arc.weight;
            if nd < dist[y] {
                dist[y] = nd;
                pred[y] = (x, a);
                heap.push(Reverse((nd, y)));
            }
        }
    }
    if dist[goal] == i64::MAX {
        return None;
    }
    let mut verts = vec![t];
    let mut arcs = Vec::new();
    let mut x = goal;
    while x != node(s, 0) {
        let (p, a) = pred[x];
        arcs.push(a);
        verts.push(p / 2);
        x = p;
    }
    verts.reverse();
    arcs.reverse();
    Some((verts, arcs))
}

/// A minimum odd-weight directed cycle, or `None` if every directed cycle
/// has even weight. Ties go to the lowest odd arc id.
pub fn solve_mocp(d: &WeightedDigraph) -> Result<Option<DirectedCycle>> {
    solve_mocp_with(d, Execution::default())
}

pub fn solve_mocp_with(d: &WeightedDigraph, exec: Execution) -> Result<Option<DirectedCycle>> {
    d.require_nonnegative()?;
    let odd: Vec<usize> = (0..d.arcs.len()).filter(|&a| d.arc(a).weight % 2 != 0).collect();
    let walks: Vec<Option<(i64, Walk)>> = par::map(exec, &odd, |&a| {
        let walk = min_odd_closed_walk_through(d, a).expect("validated above")?;
        Some((walk.weight(d), walk))
    });
    let best = walks
        .into_iter()
        .flatten()
        .enumerate()
        .min_by_key(|(i, (w, _))| (*w, *i))
        .map(|(_, x)| x);
    match best {
        None => Ok(None),
        Some((_, walk)) => extract_odd_cycle(d, &walk).map(Some),
    }
}
