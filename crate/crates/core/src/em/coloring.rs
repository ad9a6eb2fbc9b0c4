//! Color coding for small alternating-cycle families of a prescribed weight.
//!
//! Every cycle of a family with at most `L` edges uses at most `L/2`
//! matching edges. Each trial colours the matching edges with `L/2` colours;
//! a family whose matching edges are all differently coloured is found by a
//! dynamic program over colour subsets. Distinct matching edges force the
//! cycles to be simple and pairwise vertex-disjoint.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::graph::{toggle, AlternatingCycle, ColoredGraph, PerfectMatching};
use crate::par::{find_first, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trials {
    Random(u64),
    /// every colouring (two colours at most)
    Exhaustive,
}

/// Trials needed for failure probability at most `2^-20` when a
/// single colouring succeeds with probability `h!/h^h`, `h = L/2`.
pub fn trials_for(l: usize) -> u64 {
    let h = (l / 2).max(1);
    let p = (1..=h).map(|i| i as f64 / h as f64).product::<f64>();
    if p >= 1.0 {
        return 1;
    }
    (20.0 / (1.0 / (1.0 - p)).log2()).ceil() as u64
}

const EXHAUSTIVE_CAP: u64 = 1 << 22;

/// A PM `M''` with `r(M'') = r(M) + delta` and `|M Δ M''| <= l`, if the
/// colourings find one.
pub fn color_coding_search(
    g: &ColoredGraph,
    m: &PerfectMatching,
    l: usize,
    delta: i64,
    trials: Option<Trials>,
    seed: u64,
    exec: Execution,
) -> Result<Option<PerfectMatching>> {
    if delta == 0 {
        return Ok(Some(m.clone()));
    }
    let h = l / 2;
    if h == 0 || delta.unsigned_abs() as usize > h {
        return Ok(None);
    }
    if h > 12 {
        return input("color coding supports at most 24 edges");
    }
    let dp = Dp::new(g, m, h);
    let medges = m.edges().len();
    let found = match trials.unwrap_or(Trials::Random(trials_for(l))) {
        Trials::Random(t) => find_first(exec, 0..t as usize, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let colors: Vec<u8> = (0..medges).map(|_| rng.gen_range(0..h) as u8).collect();
            dp.run(&colors, delta)
        }),
        Trials::Exhaustive => {
            let total = (h as u64).checked_pow(medges as u32).filter(|&t| t <= EXHAUSTIVE_CAP);
            let Some(total) = total else {
                return input("too many colourings for exhaustive mode");
            };
            find_first(exec, 0..total as usize, |mut i| {
                let colors: Vec<u8> = (0..medges)
                    .map(|_| {
                        let c = (i % h) as u8;
                        i /= h;
                        c
                    })
                    .collect();
                dp.run(&colors, delta)
            })
        }
    };
    match found {
        Some(vertex_lists) => {
            let cycles = vertex_lists
                .iter()
                .map(|vs| AlternatingCycle::from_vertices(g, vs))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(toggle(g, m, &cycles)?))
        }
        None => Ok(None),
    }
}

struct Dp<'a> {
    g: &'a ColoredGraph,
    m: &'a PerfectMatching,
    h: usize,
    /// bit `off + w` stands for weight `w`
    off: i64,
    /// matching edge index of each vertex
    slot: Vec<usize>,
}

fn shift(mask: u32, by: i64) -> u32 {
    if by >= 0 {
        mask.checked_shl(by as u32).unwrap_or(0)
    } else {
        mask.checked_shr((-by) as u32).unwrap_or(0)
    }
}

impl<'a> Dp<'a> {
    fn new(g: &'a ColoredGraph, m: &'a PerfectMatching, h: usize) -> Self {
        let mut slot = vec![usize::MAX; g.n()];
        for (i, &e) in m.edges().iter().enumerate() {
            let ed = g.edge(e);
            slot[ed.u] = i;
            slot[ed.v] = i;
        }
        Dp {
            g,
            m,
            h,
            off: h as i64 + 2,
            slot,
        }
    }

    fn width(&self) -> u32 {
        let bits = 2 * self.off as u32 + 1;
        if bits >= 32 {
            u32::MAX
        } else {
            (1 << bits) - 1
        }
    }

    fn w(&self, u: usize, v: usize) -> i64 {
        let e = self.g.edge_between(u, v).expect("edge");
        self.m.weight_of(self.g, e)
    }

    fn sumset(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        let mut bits = a;
        while bits != 0 {
            let i = bits.trailing_zeros() as i64;
            bits &= bits - 1;
            out |= shift(b, i - self.off);
        }
        out & self.width()
    }

    /// Walk table of start `s`: `[u][S]` holds the weights of alternating
    /// walks from `s` to `u` (ending with a matching edge) whose matching
    /// edges carry exactly the colours `S`.
    fn walks(&self, s: usize, colors: &[u8]) -> Vec<u32> {
        let n = self.g.n();
        let sets = 1usize << self.h;
        let ms = self.m.partner(s);
        let mut t = vec![0u32; n * sets];
        let c0 = colors[self.slot[s]] as usize;
        t[s * sets + (1 << c0)] = 1 << (self.off + self.w(s, ms));
        for set in 1..sets {
            for u in 0..n {
                let mask = t[u * sets + set];
                if mask == 0 {
                    continue;
                }
                for &(x, e) in self.g.neighbors(u) {
                    if x <= s || x == ms || self.m.contains(e) {
                        continue;
                    }
                    let y = self.m.partner(x);
                    let c = colors[self.slot[x]] as usize;
                    if y <= s || set & (1 << c) != 0 {
                        continue;
                    }
                    let step = self.m.weight_of(self.g, e) + self.w(x, y);
                    let next = set | 1 << c;
                    t[y * sets + next] |= shift(mask, step) & self.width();
                }
            }
        }
        t
    }

    fn run(&self, colors: &[u8], delta: i64) -> Option<Vec<Vec<usize>>> {
        let n = self.g.n();
        let sets = 1usize << self.h;
        let tables: Vec<Vec<u32>> = (0..n).map(|s| self.walks(s, colors)).collect();
        // closed cycles per start and colour set
        let mut cyc = vec![vec![0u32; sets]; n];
        for s in 0..n {
            let ms = self.m.partner(s);
            for &(u, e) in self.g.neighbors(ms) {
                if u == s || self.m.contains(e) {
                    continue;
                }
                let wc = self.m.weight_of(self.g, e);
                for set in 1..sets {
                    let mask = tables[s][u * sets + set];
                    if mask != 0 {
                        cyc[s][set] |= shift(mask, wc) & self.width();
                    }
                }
            }
        }
        let any: Vec<u32> = (0..sets).map(|set| (0..n).fold(0, |acc, s| acc | cyc[s][set])).collect();
        let mut fam = vec![0u32; sets];
        fam[0] = 1 << self.off;
        for set in 1..sets {
            let low = set & set.wrapping_neg();
            let rest = set ^ low;
            // subsets of `set` that contain its lowest colour
            let mut sub = rest;
            loop {
                let part = sub | low;
                if any[part] != 0 && fam[set ^ part] != 0 {
                    fam[set] |= self.sumset(any[part], fam[set ^ part]);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        let goal = self.off + delta;
        let set = (1..sets).find(|&set| fam[set] >> goal & 1 == 1)?;
        let mut out = Vec::new();
        self.unwind(&tables, colors, &cyc, &any, &fam, set, delta, &mut out);
        Some(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn unwind(
        &self,
        tables: &[Vec<u32>],
        colors: &[u8],
        cyc: &[Vec<u32>],
        any: &[u32],
        fam: &[u32],
        set: usize,
        target: i64,
        out: &mut Vec<Vec<usize>>,
    ) {
        if set == 0 {
            return;
        }
        let low = set & set.wrapping_neg();
        let rest = set ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            let left = set ^ part;
            for wt in -(self.off)..=self.off {
                let bit = self.off + wt;
                let need = self.off + target - wt;
                if any[part] >> bit & 1 == 1 && (0..32).contains(&need) && fam[left] >> need & 1 == 1 {
                    let s = (0..cyc.len()).find(|&s| cyc[s][part] >> bit & 1 == 1).expect("recorded");
                    out.push(self.cycle(&tables[s], colors, s, part, wt));
                    self.unwind(tables, colors, cyc, any, fam, left, target - wt, out);
                    return;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        unreachable!("family table is inconsistent");
    }

    fn cycle(&self, t: &[u32], colors: &[u8], s: usize, set: usize, wt: i64) -> Vec<usize> {
        let sets = 1usize << self.h;
        let ms = self.m.partner(s);
        let has = |u: usize, set: usize, w: i64| {
            let b = self.off + w;
            (0..32).contains(&b) && t[u * sets + set] >> b & 1 == 1
        };
        let (mut u, mut w) = self
            .g
            .neighbors(ms)
            .iter()
            .filter(|&&(u, e)| u != s && !self.m.contains(e))
            .map(|&(u, e)| (u, wt - self.m.weight_of(self.g, e)))
            .find(|&(u, w)| has(u, set, w))
            .expect("closing edge recorded");
        let mut set = set;
        let mut rev = vec![ms];
        loop {
            rev.push(u);
            if u == s {
                break;
            }
            // step back over the matching edge (x, u) and the edge into x
            let x = self.m.partner(u);
            rev.push(x);
            let prev = set & !(1 << colors[self.slot[x]]);
            let wx = w - self.w(x, u);
            let (pu, pw) = self
                .g
                .neighbors(x)
                .iter()
                .filter(|&&(p, e)| !self.m.contains(e) && p != x)
                .map(|&(p, e)| (p, wx - self.m.weight_of(self.g, e)))
                .find(|&(p, pw)| has(p, prev, pw))
                .expect("predecessor recorded");
            u = pu;
            w = pw;
            set = prev;
        }
        rev.reverse();
        rev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color::*;

    #[test]
    fn trial_counts() {
        assert_eq!(trials_for(2), 1);
        assert!(trials_for(8) > trials_for(6));
    }

    #[test]
    fn finds_planted_hexagon_swap() {
        // K6, matching {01, 23, 45}; one red non-matching edge 12
        let edges: Vec<_> = (0..6usize)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, if (u, v) == (1, 2) { Red } else { Blue }))
            .collect();
        let g = ColoredGraph::new(6, edges).unwrap();
        let m = PerfectMatching::new(&g, [(0, 1), (2, 3), (4, 5)].map(|(u, v)| g.edge_between(u, v).unwrap())).unwrap();
        for mode in [Trials::Exhaustive, Trials::Random(trials_for(4))] {
            let got = color_coding_search(&g, &m, 4, 1, Some(mode), 7, Execution::Sequential).unwrap().unwrap();
            assert_eq!(got.red_count(), 1);
        }
        assert!(color_coding_search(&g, &m, 4, -1, None, 7, Execution::Sequential).unwrap().is_none());
    }
}
