//! Minimum-weight cycle for non-negative edge weights, directed or
//! undirected. An undirected closed walk that uses the same edge twice does
//! not count as a cycle, so the undirected case inspects non-tree edges of a
//! shortest-path tree instead of doubling arcs.

use crate::dijkstra::{DijkstraBuf, Dir};
use crate::error::{Error, Result};
use crate::forest::EliminationForest;
use crate::framework::{self, Problem};
use crate::graph::{Graph, VertexSetView};

/// A vertex-simple cycle witness; the closing edge back to `vertices[0]` is
/// implied. Directed cycles have length >= 2, undirected ones >= 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub weight: i64,
}

impl Cycle {
    /// Re-verify the witness: vertices distinct, consecutive edges exist,
    /// no edge used twice, stored weight equals the edge-weight sum.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let l = self.vertices.len();
        let min_len = if g.is_directed() { 2 } else { 3 };
        if l < min_len {
            return Err(Error::contract(format!("cycle of length {l} too short")));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::contract(format!("cycle repeats vertex {v}")));
            }
        }
        let mut used_edges = std::collections::HashSet::new();
        let mut w: i64 = 0;
        for i in 0..l {
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % l]);
            let id = g
                .find_edge(u, v)
                .ok_or_else(|| Error::contract(format!("cycle edge ({u}, {v}) missing")))?;
            if !used_edges.insert(id) {
                return Err(Error::contract(format!("cycle reuses edge ({u}, {v})")));
            }
            w = w.checked_add(g.edge(id).w).ok_or(Error::Overflow)?;
        }
        if w != self.weight {
            return Err(Error::contract(format!(
                "stored weight {} differs from recomputed {w}",
                self.weight
            )));
        }
        Ok(())
    }
}

/// Given a minimum-weight cycle of G[X] (or `None` when acyclic), return a
/// minimum-weight cycle of G[X ∪ {x}]: only cycles through the new root `x`
/// need to be considered. Weights must be non-negative.
pub fn min_cycle_through(
    g: &Graph,
    view: &VertexSetView<'_>,
    x: usize,
    best: Option<Cycle>,
) -> Result<Option<Cycle>> {
    let mut buf = DijkstraBuf::new(g.n());
    min_cycle_through_buf(g, view, x, best, &mut buf)
}

fn min_cycle_through_buf(
    g: &Graph,
    view: &VertexSetView<'_>,
    x: usize,
    best: Option<Cycle>,
    buf: &mut DijkstraBuf,
) -> Result<Option<Cycle>> {
    for v in view.vertices() {
        for (id, _) in view.edges_from(g, v) {
            let e = g.edge(id);
            if e.w < 0 {
                return Err(Error::NegativeWeight {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                });
            }
        }
    }
    buf.run(g, view, x, Dir::Forward, None, None);
    let best_w = best.as_ref().map(|c| c.weight);

    // Candidate weights are compared before any witness is materialized: only
    // a strictly improving candidate is guaranteed to trace a simple cycle.
    if g.is_directed() {
        let mut cand: Option<(i64, usize)> = None; // (weight, in-neighbor)
        for (id, u) in view.edges_into(g, x) {
            let e = g.edge(id);
            if e.v != x {
                continue;
            }
            if let Some(du) = buf.dist(u) {
                let w = du.checked_add(e.w).ok_or(Error::Overflow)?;
                if cand.map_or(true, |(cw, _)| w < cw) {
                    cand = Some((w, u));
                }
            }
        }
        match cand {
            Some((w, u)) if best_w.map_or(true, |bw| w < bw) => {
                let mut vertices = buf.path_to_source(u);
                vertices.reverse(); // x, ..., u
                let cycle = Cycle { vertices, weight: w };
                debug_assert!(cycle.verify(g).is_ok());
                Ok(Some(cycle))
            }
            _ => Ok(best),
        }
    } else {
        let mut cand: Option<(i64, usize, usize)> = None; // (weight, u, v)
        for p in view.vertices() {
            for (id, _) in view.edges_from(g, p) {
                let e = g.edge(id);
                if e.u != p {
                    continue; // scan each undirected edge from its u side once
                }
                if buf.parent_edge(e.u) == Some(id) || buf.parent_edge(e.v) == Some(id) {
                    continue; // tree edge
                }
                if let (Some(du), Some(dv)) = (buf.dist(e.u), buf.dist(e.v)) {
                    let w = du
                        .checked_add(e.w)
                        .and_then(|y| y.checked_add(dv))
                        .ok_or(Error::Overflow)?;
                    if cand.map_or(true, |(cw, _, _)| w < cw) {
                        cand = Some((w, e.u, e.v));
                    }
                }
            }
        }
        match cand {
            Some((w, u, v)) if best_w.map_or(true, |bw| w < bw) => {
                let mut vertices = buf.path_to_source(u);
                vertices.reverse(); // x, ..., u
                let back = buf.path_to_source(v); // v, ..., x
                vertices.extend_from_slice(&back[..back.len() - 1]);
                let cycle = Cycle { vertices, weight: w };
                debug_assert!(cycle.verify(g).is_ok());
                Ok(Some(cycle))
            }
            _ => Ok(best),
        }
    }
}

struct MinCycleProblem {
    buf: DijkstraBuf,
}

impl Problem for MinCycleProblem {
    type Value = Option<Cycle>;

    fn base(&mut self) -> Option<Cycle> {
        None
    }

    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        x: usize,
        inner: Option<Cycle>,
    ) -> Result<Option<Cycle>> {
        min_cycle_through_buf(g, view, x, inner, &mut self.buf)
    }

    fn union(
        &mut self,
        _g: &Graph,
        parts: Vec<(VertexSetView<'_>, Option<Cycle>)>,
    ) -> Result<Option<Cycle>> {
        let mut best: Option<Cycle> = None;
        for (_, c) in parts {
            if let Some(c) = c {
                if best.as_ref().map_or(true, |b| c.weight < b.weight) {
                    best = Some(c);
                }
            }
        }
        Ok(best)
    }
}

/// Minimum-weight cycle of `g`, or `None` when acyclic. Weights must be
/// non-negative (rejected at input validation).
pub fn min_weight_cycle(g: &Graph, forest: &EliminationForest) -> Result<Option<Cycle>> {
    g.require_nonnegative()?;
    let mut problem = MinCycleProblem {
        buf: DijkstraBuf::new(g.n()),
    };
    let (result, _) = framework::compute(g, forest, &mut problem)?;
    Ok(result)
}
