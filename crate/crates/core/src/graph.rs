//! Graph representation with exact integer weights and adjacency views
//! restricted to elimination-forest subtrees.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forest::EliminationForest;

/// A weighted edge. For undirected graphs the (u, v) order is the insertion
/// order and carries no meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: i64,
}

/// A simple directed or undirected graph with exact integer weights.
///
/// Immutable after construction. Vertices are dense 0-based ids; 1-based
/// external ids are mapped at the I/O boundary.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    /// Outgoing edge ids per vertex (incident edge ids when undirected),
    /// sorted by (other endpoint, edge id).
    adj_out: Vec<Vec<usize>>,
    /// Incoming edge ids per vertex; empty vectors when undirected.
    adj_in: Vec<Vec<usize>>,
    /// (u, v) -> edge id; undirected edges are keyed by (min, max).
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.directed == other.directed && self.edges == other.edges
    }
}

impl Graph {
    pub fn directed(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::build(n, true, edges)
    }

    pub fn undirected(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::build(n, false, edges)
    }

    fn build(n: usize, directed: bool, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let mut g = Graph {
            n,
            directed,
            edges: Vec::with_capacity(edges.len()),
            adj_out: vec![Vec::new(); n],
            adj_in: vec![Vec::new(); if directed { n } else { 0 }],
            index: HashMap::with_capacity(edges.len()),
        };
        for &(u, v, w) in edges {
            g.push_edge(u, v, w, None)?;
        }
        g.sort_adjacency();
        Ok(g)
    }

    /// Insert one edge while validating the simple-graph invariants.
    /// `line` is threaded through for parser error messages.
    pub(crate) fn push_edge(
        &mut self,
        u: usize,
        v: usize,
        w: i64,
        line: Option<usize>,
    ) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::input(
                line,
                format!("edge endpoint out of range: ({u}, {v}) with n = {}", self.n),
            ));
        }
        if u == v {
            return Err(Error::input(line, format!("self-loop at vertex {u}")));
        }
        let key = self.edge_key(u, v);
        if self.index.contains_key(&key) {
            return Err(Error::input(line, format!("duplicate edge ({u}, {v})")));
        }
        let id = self.edges.len();
        self.index.insert(key, id);
        self.edges.push(Edge { u, v, w });
        self.adj_out[u].push(id);
        if self.directed {
            self.adj_in[v].push(id);
        } else {
            self.adj_out[v].push(id);
        }
        Ok(())
    }

    pub(crate) fn sort_adjacency(&mut self) {
        let edges = &self.edges;
        for (v, list) in self.adj_out.iter_mut().enumerate() {
            list.sort_by_key(|&id| {
                let e = edges[id];
                (if e.u == v { e.v } else { e.u }, id)
            });
        }
        for list in self.adj_in.iter_mut() {
            list.sort_by_key(|&id| (edges[id].u, id));
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    fn edge_key(&self, u: usize, v: usize) -> (usize, usize) {
        if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Edge id of (u, v) if present. For undirected graphs the endpoint order
    /// is irrelevant; for directed graphs it is the arc u -> v.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.index.get(&self.edge_key(u, v)).copied()
    }

    /// Outgoing edge ids (all incident ids when undirected).
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.adj_out[v]
    }

    /// Incoming edge ids (all incident ids when undirected).
    pub fn in_edges(&self, v: usize) -> &[usize] {
        if self.directed {
            &self.adj_in[v]
        } else {
            &self.adj_out[v]
        }
    }

    /// The endpoint of `id` that is not `v`.
    pub fn other_endpoint(&self, id: usize, v: usize) -> usize {
        let e = self.edges[id];
        if e.u == v {
            e.v
        } else {
            e.u
        }
    }

    /// Sum of |w(e)| over all edges, as a widened integer.
    pub fn total_abs_weight(&self) -> Result<i128> {
        let mut s: i128 = 0;
        for e in &self.edges {
            s = s
                .checked_add((e.w as i128).abs())
                .ok_or(Error::Overflow)?;
        }
        Ok(s)
    }

    /// Errors unless all weights are non-negative.
    pub fn require_nonnegative(&self) -> Result<()> {
        for e in &self.edges {
            if e.w < 0 {
                return Err(Error::NegativeWeight {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                });
            }
        }
        Ok(())
    }
}

/// A read-only vertex set: one complete elimination-forest subtree, or a
/// union of complete subtrees occupying a contiguous preorder range (sibling
/// subtrees and the whole forest are both of this shape).
///
/// Membership tests are O(1) via the forest's preorder numbering.
#[derive(Clone, Copy)]
pub struct VertexSetView<'a> {
    forest: &'a EliminationForest,
    start: usize,
    end: usize,
}

impl<'a> VertexSetView<'a> {
    /// The complete subtree rooted at `x`.
    pub fn subtree(forest: &'a EliminationForest, x: usize) -> Self {
        let start = forest.preorder_pos(x);
        VertexSetView {
            forest,
            start,
            end: start + forest.subtree_size(x),
        }
    }

    /// All vertices of the forest.
    pub fn full(forest: &'a EliminationForest) -> Self {
        VertexSetView {
            forest,
            start: 0,
            end: forest.n(),
        }
    }

    pub fn forest(&self) -> &'a EliminationForest {
        self.forest
    }

    pub fn contains(&self, v: usize) -> bool {
        let p = self.forest.preorder_pos(v);
        self.start <= p && p < self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Member vertices in preorder.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + 'a {
        self.forest.preorder()[self.start..self.end].iter().copied()
    }

    /// The view covering this view minus its first preorder vertex. Only
    /// meaningful when the view is a single subtree (drops its root).
    pub fn without_root(&self) -> Self {
        VertexSetView {
            forest: self.forest,
            start: (self.start + 1).min(self.end),
            end: self.end,
        }
    }

    /// Edges of the induced subgraph leaving `v` (all incident edges within
    /// the view when the graph is undirected), as (edge id, other endpoint).
    ///
    /// Panics if `v` is not a member of the view.
    pub fn edges_from<'b>(
        &'b self,
        g: &'b Graph,
        v: usize,
    ) -> impl Iterator<Item = (usize, usize)> + 'b {
        assert!(self.contains(v), "vertex {v} is outside the view");
        g.out_edges(v).iter().filter_map(move |&id| {
            let to = g.other_endpoint(id, v);
            self.contains(to).then_some((id, to))
        })
    }

    /// Edges of the induced subgraph entering `v` (same as [`edges_from`] for
    /// undirected graphs), as (edge id, other endpoint).
    ///
    /// Panics if `v` is not a member of the view.
    ///
    /// [`edges_from`]: VertexSetView::edges_from
    pub fn edges_into<'b>(
        &'b self,
        g: &'b Graph,
        v: usize,
    ) -> impl Iterator<Item = (usize, usize)> + 'b {
        assert!(self.contains(v), "vertex {v} is outside the view");
        g.in_edges(v).iter().filter_map(move |&id| {
            let from = g.other_endpoint(id, v);
            self.contains(from).then_some((id, from))
        })
    }

    /// Number of edges with both endpoints in the view.
    pub fn edge_count(&self, g: &Graph) -> usize {
        self.forest.subtree_edge_count(g, self.start, self.end)
    }
}

impl std::fmt::Debug for VertexSetView<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::EliminationForest;

    fn forest(parents: &[Option<usize>]) -> EliminationForest {
        EliminationForest::from_parents(parents.to_vec()).unwrap()
    }

    #[test]
    fn rejects_self_loop_duplicate_and_range() {
        assert!(Graph::undirected(3, &[(0, 0, 1)]).is_err());
        assert!(Graph::undirected(3, &[(0, 1, 1), (1, 0, 2)]).is_err());
        assert!(Graph::directed(3, &[(0, 3, 1)]).is_err());
        // Antiparallel arcs are two distinct directed edges.
        assert!(Graph::directed(3, &[(0, 1, 1), (1, 0, 2)]).is_ok());
    }

    #[test]
    fn scan_full_view_triangle() {
        let g = Graph::undirected(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap();
        let f = forest(&[None, Some(0), Some(1)]);
        let view = VertexSetView::full(&f);
        let mut tos: Vec<usize> = view.edges_from(&g, 0).map(|(_, to)| to).collect();
        tos.sort_unstable();
        assert_eq!(tos, vec![1, 2]);
    }

    #[test]
    fn scan_subtree_excludes_outside_edges() {
        // Path 0-1-2-3, forest 1 -> {0, 2}, 2 -> 3.
        let g = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let f = forest(&[Some(1), None, Some(1), Some(2)]);
        let view = VertexSetView::subtree(&f, 2);
        let got: Vec<usize> = view.edges_from(&g, 2).map(|(_, to)| to).collect();
        assert_eq!(got, vec![3]); // edge 1-2 excluded
    }

    #[test]
    fn scan_isolated_vertex() {
        let g = Graph::undirected(6, &[(0, 1, 1)]).unwrap();
        let f = forest(&[None, Some(0), None, None, None, None]);
        let view = VertexSetView::subtree(&f, 5);
        assert_eq!(view.edges_from(&g, 5).count(), 0);
    }

    #[test]
    #[should_panic(expected = "outside the view")]
    fn scan_outside_view_panics() {
        let g = Graph::undirected(3, &[(0, 1, 1)]).unwrap();
        let f = forest(&[None, Some(0), Some(1)]);
        let view = VertexSetView::subtree(&f, 1);
        let _ = view.edges_from(&g, 0).count();
    }

    /// Scanning every member of a full-subtree view enumerates exactly the
    /// induced edge set (twice per undirected edge, once per endpoint).
    #[test]
    fn scan_matches_naive_filter() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..10);
            let g = crate::gen::random_graph(n, 0.5, -3..=3, false, &mut rng);
            let f = crate::forest::dfs_fallback_forest(&g);
            for x in 0..n {
                let view = VertexSetView::subtree(&f, x);
                let mut scanned: Vec<usize> = view
                    .vertices()
                    .flat_map(|v| view.edges_from(&g, v).map(|(id, _)| id))
                    .collect();
                scanned.sort_unstable();
                let mut naive: Vec<usize> = Vec::new();
                for (id, e) in g.edges().iter().enumerate() {
                    if view.contains(e.u) && view.contains(e.v) {
                        naive.push(id);
                        naive.push(id);
                    }
                }
                assert_eq!(scanned, naive);
                assert_eq!(view.edge_count(&g) * 2, scanned.len());
            }
        }
    }
}
