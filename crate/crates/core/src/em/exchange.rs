use crate::graph::{Color, ColoredGraph, EdgeId, PerfectMatching};
use crate::matching::complete_unchecked;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exchange {
    Found(PerfectMatching),
    /// every candidate was tried
    Exhausted,
    OutOfBudget,
}

/// A perfect matching whose `color` edges differ from those of `m` in
/// exactly `l` edges and whose red count is `r(m) + delta`.
///
/// Guesses the added and dropped `color` edges, then fills the remaining
/// vertices with edges of the other colour. `budget` bounds the number of
/// completions tried.
pub fn find_exchange(g: &ColoredGraph, m: &PerfectMatching, color: Color, l: usize, delta: i64, budget: u64) -> Exchange {
    let mut budget = budget;
    find_exchange_in(g, m, color, l, delta, &mut budget)
}

/// As [`find_exchange`], drawing on a shared budget.
pub(crate) fn find_exchange_in(
    g: &ColoredGraph,
    m: &PerfectMatching,
    color: Color,
    l: usize,
    delta: i64,
    budget: &mut u64,
) -> Exchange {
    if l == 0 && delta == 0 {
        return Exchange::Found(m.clone());
    }
    // change in the number of `color` edges
    let diff = if color == Color::Red { delta } else { -delta };
    let twice_a = l as i64 + diff;
    if twice_a < 0 || twice_a % 2 == 1 || twice_a > 2 * l as i64 {
        return Exchange::Exhausted;
    }
    let a = (twice_a / 2) as usize;
    let b = l - a;
    let inside: Vec<EdgeId> = m.edges().iter().copied().filter(|&e| g.color(e) == color).collect();
    let outside: Vec<EdgeId> = g
        .edge_ids()
        .filter(|&e| g.color(e) == color && !m.contains(e))
        .collect();
    if a > outside.len() || b > inside.len() {
        return Exchange::Exhausted;
    }
    let mut s = Search {
        g,
        color,
        inside: &inside,
        outside: &outside,
        b,
        budget: *budget,
        added: Vec::new(),
        used: vec![false; g.n()],
        found: None,
    };
    s.add(0, a);
    *budget = s.budget;
    match s.found {
        Some(x) => Exchange::Found(x),
        None if s.budget == 0 => Exchange::OutOfBudget,
        None => Exchange::Exhausted,
    }
}

struct Search<'a> {
    g: &'a ColoredGraph,
    color: Color,
    inside: &'a [EdgeId],
    outside: &'a [EdgeId],
    b: usize,
    budget: u64,
    added: Vec<EdgeId>,
    used: Vec<bool>,
    found: Option<PerfectMatching>,
}

impl Search<'_> {
    fn add(&mut self, from: usize, left: usize) -> bool {
        if left == 0 {
            return self.drop_phase();
        }
        for i in from..self.outside.len() {
            if self.outside.len() - i < left || self.budget == 0 {
                break;
            }
            let e = self.g.edge(self.outside[i]);
            if self.used[e.u] || self.used[e.v] {
                continue;
            }
            self.used[e.u] = true;
            self.used[e.v] = true;
            self.added.push(self.outside[i]);
            let done = self.add(i + 1, left - 1);
            self.added.pop();
            self.used[e.u] = false;
            self.used[e.v] = false;
            if done {
                return true;
            }
        }
        false
    }

    fn drop_phase(&mut self) -> bool {
        // matching edges of `color` hit by an added edge must go
        let (forced, optional): (Vec<EdgeId>, Vec<EdgeId>) = self.inside.iter().partition(|&&e| {
            let ed = self.g.edge(e);
            self.used[ed.u] || self.used[ed.v]
        });
        if forced.len() > self.b {
            return false;
        }
        let need = self.b - forced.len();
        let mut pick = Vec::with_capacity(need);
        self.choose(&optional, 0, need, &mut pick)
    }

    fn choose(&mut self, optional: &[EdgeId], from: usize, need: usize, pick: &mut Vec<usize>) -> bool {
        if need == 0 {
            return self.complete(optional, pick);
        }
        for i in from..optional.len() {
            if optional.len() - i < need || self.budget == 0 {
                break;
            }
            pick.push(i);
            if self.choose(optional, i + 1, need - 1, pick) {
                return true;
            }
            pick.pop();
        }
        false
    }

    fn complete(&mut self, optional: &[EdgeId], dropped: &[usize]) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let mut edges = self.added.clone();
        let mut covered = self.used.clone();
        for (i, &e) in optional.iter().enumerate() {
            if dropped.contains(&i) {
                continue;
            }
            let ed = self.g.edge(e);
            covered[ed.u] = true;
            covered[ed.v] = true;
            edges.push(e);
        }
        if let Some(pm) = complete_unchecked(self.g, &covered, &edges, self.color.flip()) {
            self.found = Some(pm);
            return true;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color::*;
    use crate::oracles::enumerate_pms;

    #[test]
    fn agrees_with_enumeration_on_k6() {
        let edges: Vec<_> = (0..6usize)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, if (u * v) % 3 == 1 { Red } else { Blue }))
            .collect();
        let g = ColoredGraph::new(6, edges).unwrap();
        let pms = enumerate_pms(&g, 16).unwrap();
        let reds = |p: &PerfectMatching| -> Vec<EdgeId> { p.edges().iter().copied().filter(|&e| g.edge(e).is_red()).collect() };
        for m in &pms {
            for l in 0..=4 {
                for delta in -3i64..=3 {
                    let expect = pms.iter().any(|p| {
                        let (a, b) = (reds(m), reds(p));
                        let sd = a.iter().filter(|e| !b.contains(e)).count() + b.iter().filter(|e| !a.contains(e)).count();
                        sd == l && p.red_count() as i64 == m.red_count() as i64 + delta
                    });
                    match find_exchange(&g, m, Red, l, delta, u64::MAX) {
                        Exchange::Found(p) => {
                            assert!(expect || (l == 0 && delta == 0));
                            assert_eq!(p.red_count() as i64, m.red_count() as i64 + delta);
                        }
                        Exchange::Exhausted => assert!(!expect),
                        Exchange::OutOfBudget => unreachable!(),
                    }
                }
            }
        }
    }
}
