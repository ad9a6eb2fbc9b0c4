//! Seeded instance generators. All randomness comes from a ChaCha8 stream
//! seeded with the 64-bit seed, so equal `(model, seed)` give equal
//! instances on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::graph::{Color, ColoredGraph};

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// sides `1..=n_a` and the next `n_b`, each cross pair an edge with
    /// probability `p`
    RandomBipartite { n_a: usize, n_b: usize, p: f64, red: f64 },
    Complete { n: usize, red: f64 },
    CompleteBipartite { n_a: usize, red: f64 },
    /// a random graph containing a perfect matching with exactly `k` red
    /// edges
    PlantedEm { n: usize, k: usize },
}

fn prob(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return input(format!("{what} must lie in [0, 1]"));
    }
    Ok(())
}

fn color(rng: &mut ChaCha8Rng, red: f64) -> Color {
    if rng.gen_bool(red) {
        Color::Red
    } else {
        Color::Blue
    }
}

/// Graph and `k` (the planted `k`, or `n/2 / 2` for models without one).
pub fn generate(model: &Model, seed: u64) -> Result<(ColoredGraph, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *model {
        Model::RandomBipartite { n_a, n_b, p, red } => {
            prob(p, "edge probability")?;
            prob(red, "red probability")?;
            let mut edges = Vec::new();
            for u in 0..n_a {
                for v in n_a..n_a + n_b {
                    if rng.gen_bool(p) {
                        edges.push((u, v, color(&mut rng, red)));
                    }
                }
            }
            let g = ColoredGraph::new(n_a + n_b, edges)?.with_side_a_prefix(n_a)?;
            Ok((g, (n_a + n_b) / 4))
        }
        Model::Complete { n, red } => {
            prob(red, "red probability")?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v, color(&mut rng, red)));
                }
            }
            Ok((ColoredGraph::new(n, edges)?, n / 4))
        }
        Model::CompleteBipartite { n_a, red } => {
            prob(red, "red probability")?;
            let mut edges = Vec::new();
            for u in 0..n_a {
                for v in n_a..2 * n_a {
                    edges.push((u, v, color(&mut rng, red)));
                }
            }
            Ok((ColoredGraph::new(2 * n_a, edges)?.with_side_a_prefix(n_a)?, n_a / 2))
        }
        Model::PlantedEm { n, k } => {
            if n % 2 == 1 || k > n / 2 {
                return input("planted instance needs even n and k <= n/2");
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut reds: Vec<bool> = (0..n / 2).map(|i| i < k).collect();
            reds.shuffle(&mut rng);
            let mut planted = vec![vec![None; n]; n];
            for (i, pair) in order.chunks(2).enumerate() {
                let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                planted[u][v] = Some(if reds[i] { Color::Red } else { Color::Blue });
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    match planted[u][v] {
                        Some(c) => edges.push((u, v, c)),
                        None if rng.gen_bool(0.5) => edges.push((u, v, color(&mut rng, 0.5))),
                        None => {}
                    }
                }
            }
            Ok((ColoredGraph::new(n, edges)?, k))
        }
    }
}
