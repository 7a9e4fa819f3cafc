//! Potentials and negative cycles on directed graphs, plus potential-based
//! single-source shortest paths.
//!
//! A potential is a vertex function p with w(uv) + p(u) - p(v) >= 0 on every
//! edge; one exists iff the graph has no negative cycle. The incremental step
//! extends a potential to one more vertex with a single Dijkstra pass, or
//! extracts a genuine negative cycle through that vertex.

use crate::dijkstra::{DijkstraBuf, Dir};
use crate::error::{Error, Result};
use crate::forest::EliminationForest;
use crate::framework::{self, Problem};
use crate::graph::{Graph, VertexSetView};

/// Vertex potential; entries are meaningful for the vertices of the view the
/// potential was computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub p: Vec<i64>,
}

impl Potential {
    pub fn zero(n: usize) -> Self {
        Potential { p: vec![0; n] }
    }

    /// Reduced weight of edge id under this potential.
    pub fn reduced(&self, g: &Graph, id: usize) -> Result<i64> {
        let e = g.edge(id);
        e.w
            .checked_add(self.p[e.u])
            .and_then(|x| x.checked_sub(self.p[e.v]))
            .ok_or(Error::Overflow)
    }

    /// Check w(uv) + p(u) - p(v) >= 0 for every edge of the induced subgraph.
    pub fn validate_on(&self, g: &Graph, view: &VertexSetView<'_>) -> Result<()> {
        for (id, e) in g.edges().iter().enumerate() {
            if view.contains(e.u) && view.contains(e.v) {
                let wp = self.reduced(g, id)?;
                if wp < 0 {
                    return Err(Error::contract(format!(
                        "reduced weight {wp} < 0 on edge ({}, {})",
                        e.u, e.v
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A directed cycle of negative total weight, as its vertex sequence
/// v0, ..., v(l-1) with the closing edge back to v0 implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycle {
    pub vertices: Vec<usize>,
}

impl NegativeCycle {
    /// Verify the witness: vertices distinct, all arcs present, total weight
    /// negative. Returns the weight.
    pub fn verify(&self, g: &Graph) -> Result<i64> {
        let l = self.vertices.len();
        if l < 2 {
            return Err(Error::contract("cycle too short"));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::contract(format!("cycle repeats vertex {v}")));
            }
        }
        let mut w: i64 = 0;
        for i in 0..l {
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % l]);
            let id = g
                .find_edge(u, v)
                .ok_or_else(|| Error::contract(format!("cycle arc ({u}, {v}) missing")))?;
            w = w.checked_add(g.edge(id).w).ok_or(Error::Overflow)?;
        }
        if w >= 0 {
            return Err(Error::contract(format!("cycle weight {w} is not negative")));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialOutcome {
    Potential(Potential),
    NegativeCycle(NegativeCycle),
}

/// Extend a potential valid on G[X] to G[X ∪ {x}] (`view` covers X ∪ {x},
/// `x` its subtree root), or return a negative cycle through x.
pub fn increment_potential(
    g: &Graph,
    view: &VertexSetView<'_>,
    p_x: &Potential,
    x: usize,
) -> Result<PotentialOutcome> {
    require_directed(g)?;
    p_x.validate_on(g, &view.without_root())?;
    let mut p = p_x.p.clone();
    let mut buf = DijkstraBuf::new(g.n());
    match extend(g, view, x, &mut p, &mut buf)? {
        Some(cycle) => Ok(PotentialOutcome::NegativeCycle(cycle)),
        None => Ok(PotentialOutcome::Potential(Potential { p })),
    }
}

/// Core incremental step, mutating the shared potential array in place.
fn extend(
    g: &Graph,
    view: &VertexSetView<'_>,
    x: usize,
    p: &mut [i64],
    buf: &mut DijkstraBuf,
) -> Result<Option<NegativeCycle>> {
    // p'(x) = W, the least value (floored at 0) making every out-edge of x
    // non-negative under the reduced weights. Edges into x are ignored here:
    // without them x is a source, so p' is a potential on that subgraph.
    let mut w_x: i64 = 0;
    for (id, to) in view.edges_from(g, x) {
        let e = g.edge(id);
        if e.u != x {
            continue; // incoming arc
        }
        let need = p[to].checked_sub(e.w).ok_or(Error::Overflow)?;
        w_x = w_x.max(need);
    }
    p[x] = w_x;

    // Dijkstra from x under the reduced weights. The source is finalized
    // first, so arcs into x never relax anything: this is exactly the search
    // on the graph with x's incoming arcs dropped.
    buf.run(g, view, x, Dir::Forward, None, Some(p));

    // A reachable in-neighbor v of x closing a negative reduced-weight walk
    // witnesses a negative cycle (its reduced length telescopes to its true
    // length).
    for (id, v) in view.edges_into(g, x) {
        let e = g.edge(id);
        if e.v != x {
            continue;
        }
        if let Some(dv) = buf.dist(v) {
            let wp = e.w
                .checked_add(p[v])
                .and_then(|y| y.checked_sub(p[x]))
                .ok_or(Error::Overflow)?;
            if dv + wp < 0 {
                let mut cycle = buf.path_to_source(v);
                cycle.reverse(); // x, ..., v
                let witness = NegativeCycle { vertices: cycle };
                debug_assert!(witness.verify(g).is_ok());
                return Ok(Some(witness));
            }
        }
    }

    // D lifts the unreachable side enough that every arc entering the
    // reachable side stays non-negative.
    let mut shift: i64 = 0;
    for v in buf.popped().iter().copied().collect::<Vec<_>>() {
        for (id, u) in view.edges_into(g, v) {
            let e = g.edge(id);
            if e.v != v || buf.dist(u).is_some() {
                continue;
            }
            let wp = e.w
                .checked_add(p[u])
                .and_then(|y| y.checked_sub(p[v]))
                .ok_or(Error::Overflow)?;
            let need = buf.dist(v).unwrap().checked_sub(wp).ok_or(Error::Overflow)?;
            shift = shift.max(need);
        }
    }
    for v in view.vertices() {
        match buf.dist(v) {
            Some(d) => p[v] = p[v].checked_add(d).ok_or(Error::Overflow)?,
            None => p[v] = p[v].checked_add(shift).ok_or(Error::Overflow)?,
        }
    }
    Ok(None)
}

struct PotentialProblem {
    p: Vec<i64>,
    buf: DijkstraBuf,
    cycle: Option<NegativeCycle>,
}

impl Problem for PotentialProblem {
    type Value = ();

    fn base(&mut self) {}

    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        x: usize,
        _inner: (),
    ) -> Result<()> {
        if self.cycle.is_some() {
            return Ok(()); // a cycle anywhere settles the whole run
        }
        self.cycle = extend(g, view, x, &mut self.p, &mut self.buf)?;
        Ok(())
    }

    fn union(&mut self, _g: &Graph, _parts: Vec<(VertexSetView<'_>, ())>) -> Result<()> {
        // Potentials of disconnected parts live side by side in the shared
        // array; a found cycle short-circuits.
        Ok(())
    }
}

/// Either a potential on all of `g` or a negative cycle.
pub fn potential_or_negative_cycle(
    g: &Graph,
    forest: &EliminationForest,
) -> Result<PotentialOutcome> {
    require_directed(g)?;
    let mut problem = PotentialProblem {
        p: vec![0; g.n()],
        buf: DijkstraBuf::new(g.n()),
        cycle: None,
    };
    framework::compute(g, forest, &mut problem)?;
    Ok(match problem.cycle {
        Some(c) => PotentialOutcome::NegativeCycle(c),
        None => PotentialOutcome::Potential(Potential { p: problem.p }),
    })
}

/// A shortest-path tree rooted at a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPathTree {
    pub source: usize,
    pub dist: Vec<Option<i64>>,
    pub parent: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SsspOutcome {
    Tree(ShortestPathTree),
    NegativeCycle(NegativeCycle),
}

/// Single-source shortest paths with negative weights allowed: construct a
/// potential (or report a negative cycle), then one Dijkstra pass under the
/// reduced weights. Distances are reported under the original weights.
pub fn shortest_path_tree(
    g: &Graph,
    forest: &EliminationForest,
    s: usize,
) -> Result<SsspOutcome> {
    if s >= g.n() {
        return Err(Error::contract(format!("source {s} out of range")));
    }
    let potential = match potential_or_negative_cycle(g, forest)? {
        PotentialOutcome::NegativeCycle(c) => return Ok(SsspOutcome::NegativeCycle(c)),
        PotentialOutcome::Potential(p) => p,
    };
    let mut buf = DijkstraBuf::new(g.n());
    let view = forest.full_view();
    buf.run(g, &view, s, Dir::Forward, None, Some(&potential.p));
    let mut dist = vec![None; g.n()];
    let mut parent = vec![None; g.n()];
    for v in 0..g.n() {
        if let Some(dp) = buf.dist(v) {
            // Reduced length of an s-v path differs from its true length by
            // p(s) - p(v).
            dist[v] = Some(
                dp.checked_sub(potential.p[s])
                    .and_then(|x| x.checked_add(potential.p[v]))
                    .ok_or(Error::Overflow)?,
            );
            parent[v] = buf.parent(v);
        }
    }
    Ok(SsspOutcome::Tree(ShortestPathTree {
        source: s,
        dist,
        parent,
    }))
}

fn require_directed(g: &Graph) -> Result<()> {
    if !g.is_directed() {
        return Err(Error::contract(
            "potentials and negative cycles are defined for directed graphs",
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;
    use crate::oracles::{bellman_ford, bellman_ford_any_negative_cycle, BellmanFord};

    #[test]
    fn increment_single_negative_edge() {
        let g = Graph::directed(2, &[(0, 1, -3)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let view = f.full_view();
        let p1 = Potential::zero(2);
        match increment_potential(&g, &view, &p1, 0).unwrap() {
            PotentialOutcome::Potential(p) => {
                assert_eq!(p.p, vec![3, 0]);
                p.validate_on(&g, &view).unwrap();
            }
            _ => panic!("no cycle expected"),
        }
    }

    #[test]
    fn increment_isolated_vertex() {
        let g = Graph::directed(1, &[]).unwrap();
        let f = dfs_fallback_forest(&g);
        match increment_potential(&g, &f.full_view(), &Potential::zero(1), 0).unwrap() {
            PotentialOutcome::Potential(p) => assert_eq!(p.p[0], 0),
            _ => panic!(),
        }
    }

    #[test]
    fn increment_detects_cycle() {
        // 0 -> 1 (1), 1 -> 2 (-2), 2 -> 0 (0): total -1.
        let g = Graph::directed(3, &[(0, 1, 1), (1, 2, -2), (2, 0, 0)]).unwrap();
        // Forest chain 0 -> 1 -> 2; the final increment adds x = 0.
        let f = EliminationForest::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        let view = f.full_view();
        // Potential on X = {1, 2}: only edge 1->2 with w = -2.
        let p_x = Potential {
            p: vec![0, 2, 0],
        };
        match increment_potential(&g, &view, &p_x, 0).unwrap() {
            PotentialOutcome::NegativeCycle(c) => {
                assert!(c.verify(&g).unwrap() < 0);
            }
            _ => panic!("expected a negative cycle"),
        }
        assert!(bellman_ford_any_negative_cycle(&g).is_some());
    }

    #[test]
    fn solver_examples() {
        let tri = Graph::directed(3, &[(0, 1, 1), (1, 2, -2), (2, 0, 0)]).unwrap();
        let f = dfs_fallback_forest(&tri);
        match potential_or_negative_cycle(&tri, &f).unwrap() {
            PotentialOutcome::NegativeCycle(c) => assert_eq!(c.verify(&tri).unwrap(), -1),
            _ => panic!("expected cycle"),
        }

        let single = Graph::directed(2, &[(0, 1, -3)]).unwrap();
        let f = dfs_fallback_forest(&single);
        match potential_or_negative_cycle(&single, &f).unwrap() {
            PotentialOutcome::Potential(p) => p.validate_on(&single, &f.full_view()).unwrap(),
            _ => panic!("expected potential"),
        }

        let zeros = Graph::directed(3, &[(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap();
        let f = dfs_fallback_forest(&zeros);
        match potential_or_negative_cycle(&zeros, &f).unwrap() {
            PotentialOutcome::Potential(p) => p.validate_on(&zeros, &f.full_view()).unwrap(),
            _ => panic!("expected potential"),
        }
    }

    #[test]
    fn sssp_example() {
        let g = Graph::directed(3, &[(0, 1, -3), (0, 2, 1), (2, 1, -5)]).unwrap();
        let f = dfs_fallback_forest(&g);
        match shortest_path_tree(&g, &f, 0).unwrap() {
            SsspOutcome::Tree(t) => {
                assert_eq!(t.dist[1], Some(-4));
                assert_eq!(t.dist[2], Some(1));
                assert_eq!(t.dist[0], Some(0));
            }
            _ => panic!("expected tree"),
        }
    }

    #[test]
    fn sssp_single_vertex_and_propagated_cycle() {
        let g = Graph::directed(1, &[]).unwrap();
        let f = dfs_fallback_forest(&g);
        match shortest_path_tree(&g, &f, 0).unwrap() {
            SsspOutcome::Tree(t) => assert_eq!(t.dist[0], Some(0)),
            _ => panic!(),
        }

        let tri = Graph::directed(3, &[(0, 1, -1), (1, 2, -1), (2, 0, -1)]).unwrap();
        let f = dfs_fallback_forest(&tri);
        assert!(matches!(
            shortest_path_tree(&tri, &f, 0).unwrap(),
            SsspOutcome::NegativeCycle(_)
        ));
    }

    /// Shift invariance: adding a constant to every potential entry keeps it
    /// valid.
    #[test]
    fn potential_shift_invariance() {
        let g = Graph::directed(3, &[(0, 1, -3), (0, 2, 1), (2, 1, -5)]).unwrap();
        let f = dfs_fallback_forest(&g);
        if let PotentialOutcome::Potential(mut p) = potential_or_negative_cycle(&g, &f).unwrap() {
            p.validate_on(&g, &f.full_view()).unwrap();
            for v in p.p.iter_mut() {
                *v += 17;
            }
            p.validate_on(&g, &f.full_view()).unwrap();
        } else {
            panic!("expected potential");
        }
    }

    #[test]
    fn agrees_with_bellman_ford_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..300 {
            let n = rng.gen_range(1..=20);
            let g = crate::gen::random_graph(n, 0.25, -10..=10, true, &mut rng);
            let forest = dfs_fallback_forest(&g);
            let ours = potential_or_negative_cycle(&g, &forest).unwrap();
            let oracle_cycle = bellman_ford_any_negative_cycle(&g);
            match ours {
                PotentialOutcome::Potential(p) => {
                    assert!(oracle_cycle.is_none());
                    p.validate_on(&g, &forest.full_view()).unwrap();
                    // Distances agree with Bellman-Ford from source 0.
                    match (shortest_path_tree(&g, &forest, 0).unwrap(), bellman_ford(&g, 0)) {
                        (SsspOutcome::Tree(t), BellmanFord::Distances(d)) => {
                            assert_eq!(t.dist, d);
                        }
                        _ => panic!("inconsistent outcomes"),
                    }
                }
                PotentialOutcome::NegativeCycle(c) => {
                    assert!(c.verify(&g).unwrap() < 0);
                    assert!(oracle_cycle.is_some());
                }
            }
        }
    }
}
