//! Correct parity matching through the span of perfect-matching incidence
//! vectors over the two-element field.

use std::ops::ControlFlow;

use crate::error::{input, Result};
use crate::graph::{ColoredGraph, EdgeId, PerfectMatching};
use crate::oracles::{for_each_pm, PM_ENUM_CAP};

/// Bit vector over the two-element field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Vector {
    dim: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zero(dim: usize) -> Self {
        F2Vector {
            dim,
            words: vec![0; dim.div_ceil(64)],
        }
    }

    pub fn from_indices(dim: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = F2Vector::zero(dim);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.dim, "index {i} out of dimension {}", self.dim);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisSource {
    BruteForce,
    External,
}

/// Linearly independent vectors spanning the hull, kept in echelon form
/// (distinct leading bits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullBasis {
    dim: usize,
    vectors: Vec<F2Vector>,
    pub source: BasisSource,
}

impl HullBasis {
    pub fn new(dim: usize, source: BasisSource) -> Self {
        HullBasis {
            dim,
            vectors: Vec::new(),
            source,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[F2Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut r = v.clone();
        for b in &self.vectors {
            let lead = b.leading().expect("basis vectors are non-zero");
            if r.get(lead) {
                r.add_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` if it is independent of the basis; returns whether it was.
    pub fn insert(&mut self, v: F2Vector) -> Result<bool> {
        if v.dim() != self.dim {
            return input("vector dimension differs from the basis");
        }
        let r = self.reduce(&v);
        let Some(lead) = r.leading() else {
            return Ok(false);
        };
        for b in &mut self.vectors {
            if b.get(lead) {
                b.add_assign(&r);
            }
        }
        let at = self
            .vectors
            .partition_point(|b| b.leading().expect("non-zero") < lead);
        self.vectors.insert(at, r);
        Ok(true)
    }
}

/// Source of hull bases. With `gadget`, every vector gets one extra
/// trailing coordinate set to 1, standing for a disjoint red edge present in
/// every perfect matching.
pub trait HullProvider {
    fn basis(&self, g: &ColoredGraph, gadget: bool) -> Result<HullBasis>;
}

/// Enumerates all perfect matchings and eliminates.
#[derive(Clone, Copy, Debug)]
pub struct BruteForceHull {
    pub cap: usize,
}

impl Default for BruteForceHull {
    fn default() -> Self {
        BruteForceHull { cap: PM_ENUM_CAP }
    }
}

impl HullProvider for BruteForceHull {
    fn basis(&self, g: &ColoredGraph, gadget: bool) -> Result<HullBasis> {
        let dim = g.m() + usize::from(gadget);
        let mut basis = HullBasis::new(dim, BasisSource::BruteForce);
        let mut err = None;
        for_each_pm(g, self.cap, |edges| {
            let mut v = F2Vector::from_indices(dim, edges.iter().map(|e| e.index()));
            if gadget {
                v.set(g.m(), true);
            }
            match basis.insert(v) {
                Ok(_) if basis.len() == dim => ControlFlow::Break(()),
                Ok(_) => ControlFlow::Continue(()),
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(basis),
        }
    }
}

pub fn hull_basis(g: &ColoredGraph, provider: &dyn HullProvider) -> Result<HullBasis> {
    provider.basis(g, false)
}

/// Indicator of the red edges.
pub fn red_vector(g: &ColoredGraph) -> F2Vector {
    F2Vector::from_indices(g.m(), g.edge_ids().filter(|&e| g.edge(e).is_red()).map(EdgeId::index))
}

/// True iff some perfect matching has an odd number of red edges.
pub fn exists_odd_red_pm(basis: &HullBasis, red: &F2Vector) -> Result<bool> {
    if basis.dim() != red.dim() {
        return input("red vector dimension differs from the basis");
    }
    Ok(basis.vectors().iter().any(|b| b.dot(red)))
}

/// True iff some perfect matching has red count congruent to `k` mod 2.
pub fn decide_cpm(g: &ColoredGraph, k: usize, provider: &dyn HullProvider) -> Result<bool> {
    if k % 2 == 1 {
        return exists_odd_red_pm(&provider.basis(g, false)?, &red_vector(g));
    }
    let mut red = F2Vector::from_indices(g.m() + 1, g.edge_ids().filter(|&e| g.edge(e).is_red()).map(EdgeId::index));
    red.set(g.m(), true);
    exists_odd_red_pm(&provider.basis(g, true)?, &red)
}

/// Edge-deletion self-reduction on top of [`decide_cpm`]. Returns the
/// matching and the number of decision calls made.
pub fn solve_cpm_counted(
    g: &ColoredGraph,
    k: usize,
    provider: &dyn HullProvider,
) -> Result<(Option<PerfectMatching>, usize)> {
    let mut calls = 1;
    if !decide_cpm(g, k, provider)? {
        return Ok((None, calls));
    }
    let mut keep = vec![true; g.m()];
    for e in 0..g.m() {
        keep[e] = false;
        let (sub, _) = g.retain_edges(&keep);
        calls += 1;
        if !decide_cpm(&sub, k, provider)? {
            keep[e] = true;
        }
    }
    let edges = (0..g.m()).filter(|&e| keep[e]).map(EdgeId);
    Ok((Some(PerfectMatching::new(g, edges)?), calls))
}

pub fn solve_cpm(g: &ColoredGraph, k: usize, provider: &dyn HullProvider) -> Result<Option<PerfectMatching>> {
    Ok(solve_cpm_counted(g, k, provider)?.0)
}
