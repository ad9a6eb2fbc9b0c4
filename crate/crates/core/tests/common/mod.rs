#![allow(dead_code)]

use exmatch_core::graph::{Color, ColoredGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coin(r: &mut ChaCha8Rng, p: f64) -> Color {
    if r.gen_bool(p) {
        Color::Red
    } else {
        Color::Blue
    }
}

/// Balanced bipartite graph, sides `0..h` and `h..2h`.
pub fn random_bipartite(r: &mut ChaCha8Rng, max_n: usize) -> ColoredGraph {
    let h = r.gen_range(1..=max_n / 2);
    let p = [0.35, 0.6, 0.9][r.gen_range(0..3)];
    let red = [0.2, 0.5, 0.8][r.gen_range(0..3)];
    let mut edges = Vec::new();
    for u in 0..h {
        for v in h..2 * h {
            if r.gen_bool(p) {
                edges.push((u, v, coin(r, red)));
            }
        }
    }
    ColoredGraph::new(2 * h, edges).unwrap().with_side_a_prefix(h).unwrap()
}

/// General graph on an even number of vertices.
pub fn random_general(r: &mut ChaCha8Rng, max_n: usize) -> ColoredGraph {
    let n = 2 * r.gen_range(1..=max_n / 2);
    let p = [0.3, 0.55, 0.85][r.gen_range(0..3)];
    let red = [0.2, 0.5, 0.8][r.gen_range(0..3)];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v, coin(r, red)));
            }
        }
    }
    ColoredGraph::new(n, edges).unwrap()
}

pub fn complete(n: usize, r: &mut ChaCha8Rng, red: f64) -> ColoredGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, coin(r, red)));
        }
    }
    ColoredGraph::new(n, edges).unwrap()
}

use exmatch_core::em::BcpmOracle;
use exmatch_core::error::Result;
use exmatch_core::graph::PerfectMatching;
use exmatch_core::oracles::enumerate_pms;

/// A valid BCPM oracle that always answers with the fewest red edges of the
/// right parity, pushing the solver as far from `k` as allowed.
pub struct FarOracle;

impl BcpmOracle for FarOracle {
    fn solve(&self, g: &ColoredGraph, k: usize) -> Result<Option<PerfectMatching>> {
        Ok(enumerate_pms(g, 16)?
            .into_iter()
            .filter(|m| m.red_count() <= k && m.red_count() % 2 == k % 2)
            .min_by_key(|m| m.red_count()))
    }
}
