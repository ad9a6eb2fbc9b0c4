//! Pair, bundle and sign-alternating-path classification of an alternating
//! path.

use super::CyclePath;
use crate::error::{input, Result};
use crate::graph::{AlternatingCycle, ColoredGraph, PerfectMatching};

/// A matching edge followed by a non-matching edge. `offset` is the index
/// of the matching edge within the scanned path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pair {
    pub offset: usize,
    pub weight: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairScan {
    pub pairs: Vec<Pair>,
    /// Offset of an unpaired first edge (the path started off the matching).
    pub leading: Option<usize>,
    /// Offset of an unpaired last edge.
    pub trailing: Option<usize>,
    /// Weight of `leading` plus `trailing`.
    pub loose_weight: i64,
    /// Maximum families of disjoint bundles, as pair indices.
    pub plus_bundles: Vec<(usize, usize)>,
    pub minus_bundles: Vec<(usize, usize)>,
    /// Maximal bundle-free runs of pairs, inclusive pair index ranges.
    pub saps: Vec<(usize, usize)>,
}

impl PairScan {
    pub fn total_weight(&self) -> i64 {
        self.pairs.iter().map(|p| p.weight).sum::<i64>() + self.loose_weight
    }

    /// Path stretch (relative to the scanned path) covered by a bundle.
    pub fn bundle_path(&self, b: (usize, usize)) -> CyclePath {
        let start = self.pairs[b.0].offset;
        CyclePath::new(start, self.pairs[b.1].offset + 2 - start)
    }

    /// Number of non-zero pairs in a SAP.
    pub fn sap_nonzero(&self, sap: (usize, usize)) -> usize {
        self.pairs[sap.0..=sap.1].iter().filter(|p| p.weight != 0).count()
    }
}

/// Classifies the stretch `path` of cycle `c` into pairs, bundles and SAPs.
pub fn scan_pairs_bundles(
    g: &ColoredGraph,
    m: &PerfectMatching,
    c: &AlternatingCycle,
    path: CyclePath,
) -> Result<PairScan> {
    if !c.is_alternating(m) {
        return input("path is not alternating with respect to the matching");
    }
    if path.len > c.len() || path.start >= c.len() {
        return input("path does not fit on the cycle");
    }
    let edges: Vec<_> = path.edges(c).collect();
    let mut scan = PairScan::default();
    let mut i = 0;
    if let Some(&e) = edges.first() {
        if !m.contains(e) {
            scan.leading = Some(0);
            scan.loose_weight += m.weight_of(g, e);
            i = 1;
        }
    }
    while i + 1 < edges.len() {
        scan.pairs.push(Pair {
            offset: i,
            weight: m.weight_of(g, edges[i]) + m.weight_of(g, edges[i + 1]),
        });
        i += 2;
    }
    if i < edges.len() {
        scan.trailing = Some(i);
        scan.loose_weight += m.weight_of(g, edges[i]);
    }

    let nz: Vec<usize> = (0..scan.pairs.len()).filter(|&p| scan.pairs[p].weight != 0).collect();
    let mut x = 0;
    while x + 1 < nz.len() {
        let (a, b) = (nz[x], nz[x + 1]);
        let w = scan.pairs[a].weight;
        if w == scan.pairs[b].weight {
            if w > 0 {
                scan.plus_bundles.push((a, b));
            } else {
                scan.minus_bundles.push((a, b));
            }
            x += 2;
        } else {
            x += 1;
        }
    }

    if !scan.pairs.is_empty() {
        let mut start = 0;
        for w in nz.windows(2) {
            let (a, b) = (w[0], w[1]);
            if scan.pairs[a].weight == scan.pairs[b].weight {
                scan.saps.push((start, b - 1));
                start = a + 1;
            }
        }
        scan.saps.push((start, scan.pairs.len() - 1));
    }
    Ok(scan)
}
