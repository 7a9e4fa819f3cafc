//! Matchings: cardinality augmentation and the maximum-matching solver
//! ([`card`]), weighted perfect matching with dual certificates ([`weighted`],
//! [`duals`]), and the reductions for the non-perfect variants ([`reductions`]).

pub mod card;
pub mod duals;
pub mod reductions;
pub mod weighted;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSetView};

pub use card::{augment_matching, max_matching, AugmentOutcome};
pub use duals::{check_duals, DualViolation, MatchingDuals};
pub use reductions::{
    max_weight_matching, max_weight_max_size_matching, min_weight_disjoint_a_paths,
    reduce_disjoint_a_paths, reduce_max_weight_matching, shift_for_max_size, APaths,
};
pub use weighted::{max_weight_perfect_matching, weighted_augment, WeightedAugmentOutcome};

pub(crate) const UNMATCHED: usize = usize::MAX;

/// A matching stored as a symmetric mate table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
    len: usize,
}

impl Matching {
    pub fn new(n: usize) -> Self {
        Matching {
            mate: vec![UNMATCHED; n],
            len: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matching::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::contract(format!("bad matching edge ({u}, {v})")));
            }
            if m.mate[u] != UNMATCHED || m.mate[v] != UNMATCHED {
                return Err(Error::contract(format!(
                    "matching edges share vertex at ({u}, {v})"
                )));
            }
            m.mate[u] = v;
            m.mate[v] = u;
            m.len += 1;
        }
        Ok(m)
    }

    pub(crate) fn from_raw(mate: Vec<usize>) -> Self {
        let len = mate
            .iter()
            .enumerate()
            .filter(|&(v, &m)| m != UNMATCHED && v < m)
            .count();
        Matching { mate, len }
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.mate
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    /// Number of matched edges.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        match self.mate[v] {
            UNMATCHED => None,
            m => Some(m),
        }
    }

    /// Matched edges as (u, v) pairs with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(v, &m)| m != UNMATCHED && v < m)
            .map(|(v, &m)| (v, m))
            .collect()
    }

    pub fn weight(&self, g: &Graph) -> Result<i64> {
        let mut total: i64 = 0;
        for (u, v) in self.edges() {
            let id = g
                .find_edge(u, v)
                .ok_or_else(|| Error::contract(format!("matched edge ({u}, {v}) not in graph")))?;
            total = total.checked_add(g.edge(id).w).ok_or(Error::Overflow)?;
        }
        Ok(total)
    }

    /// True iff every view vertex is matched.
    pub fn is_perfect_on(&self, view: &VertexSetView<'_>) -> bool {
        view.vertices().all(|v| self.mate[v] != UNMATCHED)
    }

    /// Structural validity on the induced subgraph: symmetric mate table,
    /// matched edges exist in `g`, and both endpoints lie inside `view`.
    pub fn validate_on(&self, g: &Graph, view: &VertexSetView<'_>) -> Result<()> {
        if self.mate.len() != g.n() {
            return Err(Error::contract(format!(
                "matching covers {} vertices, graph has {}",
                self.mate.len(),
                g.n()
            )));
        }
        for v in 0..self.mate.len() {
            let m = self.mate[v];
            if m == UNMATCHED {
                continue;
            }
            if m >= self.mate.len() || self.mate[m] != v {
                return Err(Error::contract(format!("mate table asymmetric at {v}")));
            }
            if v < m {
                if g.find_edge(v, m).is_none() {
                    return Err(Error::contract(format!(
                        "matched pair ({v}, {m}) is not a graph edge"
                    )));
                }
                if !view.contains(v) || !view.contains(m) {
                    return Err(Error::contract(format!(
                        "matched edge ({v}, {m}) leaves the view"
                    )));
                }
            }
        }
        Ok(())
    }
}
