mod common;

use common::{complete, rng};
use exmatch_core::graph::{sym_diff_cycles, AlternatingCycle, Color, ColoredGraph, PerfectMatching};
use exmatch_core::skips::{
    enumerate_skips, find_long_mono_path, find_small_weight_cycle, find_zero_skip_cycle_set, use_skip_cycle_set,
    CyclePath, Mode, ZeroSearch,
};
use rand::seq::SliceRandom;
use rand::Rng;

fn pm(g: &ColoredGraph, order: &[usize]) -> PerfectMatching {
    PerfectMatching::new(g, order.chunks(2).map(|p| g.edge_between(p[0], p[1]).unwrap())).unwrap()
}

#[test]
fn zero_sets_keep_red_count_and_shrink() {
    let mut r = rng(60);
    let mut applied = 0;
    for _ in 0..200 {
        let n = 2 * r.gen_range(3..=6);
        let g = complete(n, &mut r, 0.5);
        let mut a: Vec<usize> = (0..n).collect();
        a.shuffle(&mut r);
        let mut b = a.clone();
        b.shuffle(&mut r);
        let (m, mo) = (pm(&g, &a), pm(&g, &b));
        let cycles = sym_diff_cycles(&g, &m, &mo).unwrap();
        if cycles.is_empty() {
            continue;
        }
        let cfg = ZeroSearch {
            mode: Mode::Alpha,
            t: 1,
            node_budget: 20_000,
        };
        let res = find_zero_skip_cycle_set(&g, &m, &cycles, cfg).unwrap();
        if let Some(set) = res.set {
            assert_eq!(set.weight, 0);
            let (after, mo2) = use_skip_cycle_set(&g, &m, &mo, &cycles, &set).unwrap();
            assert_eq!(mo2.red_count(), mo.red_count());
            assert!(after.edge_count() < cycles.edge_count());
            assert_eq!(sym_diff_cycles(&g, &m, &mo2).unwrap().edge_count(), after.edge_count());
            applied += 1;
        }
    }
    assert!(applied > 50, "{applied}");
}

#[test]
fn beta_requires_bipartite() {
    let mut r = rng(61);
    let g = complete(6, &mut r, 0.5);
    let m = pm(&g, &[0, 1, 2, 3, 4, 5]);
    let c = AlternatingCycle::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
    assert!(enumerate_skips(&g, &m, &c, Mode::Beta).is_err());
    assert!(enumerate_skips(&g, &m, &c, Mode::Alpha).is_ok());
}

#[test]
fn non_alternating_host_is_rejected() {
    let mut r = rng(62);
    let g = complete(6, &mut r, 0.5);
    let m = pm(&g, &[0, 1, 2, 3, 4, 5]);
    let c = AlternatingCycle::from_vertices(&g, &[0, 2, 1, 3]).unwrap();
    assert!(enumerate_skips(&g, &m, &c, Mode::Alpha).is_err());
}

/// Long cycle alternating between blue matching edges and `color`
/// non-matching edges inside `K_n`.
fn mono_cycle(n: usize, color: Color) -> (ColoredGraph, PerfectMatching, AlternatingCycle) {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let matched = u % 2 == 0 && v == u + 1;
            let on_cycle = (u % 2 == 1 && v == u + 1) || (u == 0 && v == n - 1);
            let c = if matched {
                Color::Blue
            } else if on_cycle {
                color
            } else {
                color.flip()
            };
            edges.push((u, v, c));
        }
    }
    let g = ColoredGraph::new(n, edges).unwrap();
    let m = pm(&g, &(0..n).collect::<Vec<_>>());
    let c = AlternatingCycle::from_vertices(&g, &(0..n).collect::<Vec<_>>()).unwrap();
    (g, m, c)
}

#[test]
fn long_mono_path_on_blue_cycle() {
    let (g, m, c) = mono_cycle(12, Color::Blue);
    let other: Vec<usize> = (1..12).chain([0]).collect();
    let cycles = sym_diff_cycles(&g, &m, &pm(&g, &other)).unwrap();
    assert_eq!(cycles.len(), 1);
    assert_eq!(cycles.cycles()[0].len(), c.len());
    let (i, run) = find_long_mono_path(&g, &cycles, 11, Color::Blue).unwrap();
    assert_eq!((i, run.len), (0, 11));
    assert!(find_long_mono_path(&g, &cycles, 12, Color::Blue).is_none());
    assert!(find_long_mono_path(&g, &cycles, 1, Color::Red).is_none());
}

#[test]
fn small_weight_cycle_from_red_chords() {
    let (g, m, c) = mono_cycle(12, Color::Blue);
    let found = find_small_weight_cycle(&g, &m, &c, CyclePath::new(0, 11), Color::Blue, Mode::Alpha)
        .unwrap()
        .expect("two red chords close a cycle");
    assert!(found.is_alternating(&m));
    assert!(found.len() < c.len());
    let w = found.weight(&g, &m);
    assert!(w > 0 && w <= 2);
    assert_eq!(found.red_count(&g) as i64, w);
}
