//! Maximum-cardinality matching: a single blossom-contraction search that
//! either augments a matching by one edge or certifies it maximum, and the
//! forest-driven solver built on it.
//!
//! The search grows alternating trees from every exposed vertex at once
//! (breadth-first, ascending vertex id), contracting blossoms with a
//! union-find over bases. One call touches O(|E[view]|) edges.

use std::collections::VecDeque;

use crate::error::Result;
use crate::forest::EliminationForest;
use crate::framework::{self, CostLedger, Problem};
use crate::graph::{Graph, VertexSetView};
use crate::matching::{Matching, UNMATCHED};

/// Result of one augmentation attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentOutcome {
    /// A matching one edge larger.
    Augmented(Matching),
    /// The input matching is maximum on the view.
    Maximum,
}

/// Either grow `m` by one edge or certify that it is a maximum matching of
/// the subgraph induced by `view`. The graph must be undirected and `m` a
/// valid matching of that subgraph.
pub fn augment_matching(
    g: &Graph,
    view: &VertexSetView<'_>,
    m: &Matching,
) -> Result<AugmentOutcome> {
    if g.is_directed() {
        return Err(crate::Error::contract("matching requires an undirected graph"));
    }
    m.validate_on(g, view)?;
    let mut mate = m.raw().to_vec();
    let mut search = BlossomSearch::new(g.n());
    if search.augment(g, view, &mut mate) {
        Ok(AugmentOutcome::Augmented(Matching::from_raw(mate)))
    } else {
        Ok(AugmentOutcome::Maximum)
    }
}

/// Maximum-cardinality matching of `g` driven by the elimination forest:
/// each vertex triggers exactly one augmentation attempt on its subtree.
pub fn max_matching(g: &Graph, forest: &EliminationForest) -> Result<Matching> {
    Ok(max_matching_with_ledger(g, forest)?.0)
}

pub fn max_matching_with_ledger(
    g: &Graph,
    forest: &EliminationForest,
) -> Result<(Matching, CostLedger)> {
    if g.is_directed() {
        return Err(crate::Error::contract("matching requires an undirected graph"));
    }
    let mut problem = MaxMatchingProblem::new(g.n());
    let (_, ledger) = framework::compute(g, forest, &mut problem)?;
    Ok((Matching::from_raw(problem.mate), ledger))
}

/// Problem instance for the driver. The matching lives in one shared mate
/// table; disjoint parts occupy disjoint entries, so `union` merely sums
/// sizes. Exposed for tests that count augmentation calls.
pub struct MaxMatchingProblem {
    mate: Vec<usize>,
    search: BlossomSearch,
    pub augment_calls: u64,
}

impl MaxMatchingProblem {
    pub fn new(n: usize) -> Self {
        MaxMatchingProblem {
            mate: vec![UNMATCHED; n],
            search: BlossomSearch::new(n),
            augment_calls: 0,
        }
    }
}

impl Problem for MaxMatchingProblem {
    /// Matching size within the part.
    type Value = usize;

    fn base(&mut self) -> usize {
        0
    }

    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        _x: usize,
        inner: usize,
    ) -> Result<usize> {
        self.augment_calls += 1;
        let grown = self.search.augment(g, view, &mut self.mate);
        Ok(inner + grown as usize)
    }

    fn union(&mut self, _g: &Graph, parts: Vec<(VertexSetView<'_>, usize)>) -> Result<usize> {
        Ok(parts.into_iter().map(|(_, s)| s).sum())
    }
}

/// Reusable state for the blossom search; arrays are stamp-reset so one call
/// costs O(|view| + |E[view]|), not O(n).
pub(crate) struct BlossomSearch {
    dsu: Vec<usize>,
    dsu_rank: Vec<u32>,
    base_of: Vec<usize>,
    parent: Vec<usize>,
    parent_stamp: Vec<u32>,
    even_stamp: Vec<u32>,
    root: Vec<usize>,
    lca_mark: Vec<u32>,
    stamp: u32,
    lca_stamp: u32,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    pub fn new(n: usize) -> Self {
        BlossomSearch {
            dsu: (0..n).collect(),
            dsu_rank: vec![0; n],
            base_of: (0..n).collect(),
            parent: vec![UNMATCHED; n],
            parent_stamp: vec![0; n],
            even_stamp: vec![0; n],
            root: vec![UNMATCHED; n],
            lca_mark: vec![0; n],
            stamp: 0,
            lca_stamp: 0,
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.dsu[v] != v {
            self.dsu[v] = self.find(self.dsu[v]);
        }
        self.dsu[v]
    }

    fn base(&mut self, v: usize) -> usize {
        let r = self.find(v);
        self.base_of[r]
    }

    /// Union two groups and give the merged group base vertex `b`.
    fn union_into(&mut self, v: usize, w: usize, b: usize) {
        let (rv, rw) = (self.find(v), self.find(w));
        let merged = if rv == rw {
            rv
        } else if self.dsu_rank[rv] < self.dsu_rank[rw] {
            self.dsu[rv] = rw;
            rw
        } else {
            self.dsu[rw] = rv;
            if self.dsu_rank[rv] == self.dsu_rank[rw] {
                self.dsu_rank[rv] += 1;
            }
            rv
        };
        self.base_of[merged] = b;
    }

    fn even(&self, v: usize) -> bool {
        self.even_stamp[v] == self.stamp
    }

    fn mark_even(&mut self, v: usize, root: usize) {
        self.even_stamp[v] = self.stamp;
        self.root[v] = root;
        self.queue.push_back(v);
    }

    fn has_parent(&self, v: usize) -> bool {
        self.parent_stamp[v] == self.stamp
    }

    fn set_parent(&mut self, v: usize, p: usize) {
        self.parent[v] = p;
        self.parent_stamp[v] = self.stamp;
    }

    /// One augmentation search. Returns true (and flips `mate` along an
    /// augmenting path) or false when the matching is maximum on the view.
    pub fn augment(&mut self, g: &Graph, view: &VertexSetView<'_>, mate: &mut [usize]) -> bool {
        self.stamp += 1;
        self.queue.clear();
        let mut exposed: Vec<usize> = view.vertices().filter(|&v| mate[v] == UNMATCHED).collect();
        exposed.sort_unstable();
        if exposed.len() < 2 {
            return false;
        }
        for v in view.vertices() {
            self.dsu[v] = v;
            self.dsu_rank[v] = 0;
            self.base_of[v] = v;
        }
        for &r in &exposed {
            self.mark_even(r, r);
        }

        while let Some(v) = self.queue.pop_front() {
            // v may have been absorbed into a blossom since queueing; that
            // only changes its base, scanning it is still correct.
            for (_, to) in view.edges_from(g, v) {
                if mate[v] == to || self.base(v) == self.base(to) {
                    continue;
                }
                if self.even(to) {
                    if self.root[v] != self.root[to] {
                        self.augment_along(v, to, mate);
                        return true;
                    }
                    self.contract_blossom(v, to, mate);
                } else if !self.has_parent(to) {
                    // First visit of a matched vertex: label it odd and its
                    // mate even.
                    debug_assert_ne!(mate[to], UNMATCHED);
                    self.set_parent(to, v);
                    let m = mate[to];
                    if !self.even(m) {
                        self.mark_even(m, self.root[v]);
                    }
                }
            }
        }
        false
    }

    /// Least common ancestor (as a base vertex) of v and w in their tree.
    fn lca(&mut self, v: usize, w: usize, mate: &[usize]) -> usize {
        self.lca_stamp += 1;
        let mut v = v;
        loop {
            v = self.base(v);
            self.lca_mark[v] = self.lca_stamp;
            if mate[v] == UNMATCHED {
                break; // reached the tree root
            }
            v = self.parent[mate[v]];
        }
        let mut w = w;
        loop {
            w = self.base(w);
            if self.lca_mark[w] == self.lca_stamp {
                return w;
            }
            w = self.parent[mate[w]];
        }
    }

    fn contract_blossom(&mut self, v: usize, w: usize, mate: &[usize]) {
        let b = self.lca(v, w, mate);
        self.mark_path(v, b, w, mate);
        self.mark_path(w, b, v, mate);
    }

    /// Walk from `v` up to the blossom base `b`, setting the cross pointers
    /// used by augmentation and absorbing path vertices into the blossom.
    fn mark_path(&mut self, mut v: usize, b: usize, mut x: usize, mate: &[usize]) {
        let root = self.root[b];
        while self.base(v) != b {
            let o = mate[v];
            self.set_parent(v, x);
            x = o;
            self.union_into(v, b, b);
            self.union_into(o, b, b);
            if !self.even(o) {
                self.mark_even(o, root);
            }
            v = self.parent[o];
        }
    }

    /// Flip the matching along the augmenting path joining the trees of
    /// `v` and `to` through the edge (v, to).
    fn augment_along(&mut self, v: usize, to: usize, mate: &mut [usize]) {
        let other_side = mate[to];
        self.set_parent(to, v);
        self.flip(to, mate);
        if other_side != UNMATCHED {
            self.flip(other_side, mate);
        }
    }

    /// The classic augment walk: `finish` has a parent pointer into a tree;
    /// alternate mate/parent pointers up to the exposed root, flipping.
    fn flip(&mut self, finish: usize, mate: &mut [usize]) {
        let mut cur = finish;
        loop {
            let prev = self.parent[cur];
            let next = mate[prev];
            mate[cur] = prev;
            mate[prev] = cur;
            if next == UNMATCHED {
                break;
            }
            cur = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;
    use crate::oracles::brute_max_matching;

    fn full_view(f: &EliminationForest) -> VertexSetView<'_> {
        f.full_view()
    }

    #[test]
    fn augment_p3_from_empty() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        match augment_matching(&g, &full_view(&f), &Matching::new(3)).unwrap() {
            AugmentOutcome::Augmented(m) => assert_eq!(m.len(), 1),
            AugmentOutcome::Maximum => panic!("expected augmentation"),
        }
    }

    #[test]
    fn augment_p3_saturated_middle() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let m = Matching::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(
            augment_matching(&g, &full_view(&f), &m).unwrap(),
            AugmentOutcome::Maximum
        );
    }

    #[test]
    fn augment_p4_flips_middle_edge() {
        let g = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let m = Matching::from_edges(4, &[(1, 2)]).unwrap();
        match augment_matching(&g, &full_view(&f), &m).unwrap() {
            AugmentOutcome::Augmented(m) => {
                assert_eq!(m.edges(), vec![(0, 1), (2, 3)]);
            }
            AugmentOutcome::Maximum => panic!("expected augmentation"),
        }
    }

    #[test]
    fn augment_rejects_invalid_matching() {
        let g = Graph::undirected(3, &[(0, 1, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        // (0, 2) is not an edge.
        let m = Matching::from_edges(3, &[(0, 2)]).unwrap();
        assert!(augment_matching(&g, &full_view(&f), &m).is_err());
    }

    #[test]
    fn solver_examples() {
        let p4 = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let m = max_matching(&p4, &dfs_fallback_forest(&p4)).unwrap();
        assert_eq!(m.len(), 2);

        let tri = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let m = max_matching(&tri, &dfs_fallback_forest(&tri)).unwrap();
        assert_eq!(m.len(), 1);
    }

    /// The classic blossom trap: odd cycle with a tail.
    #[test]
    fn solver_handles_blossoms() {
        let g = Graph::undirected(
            6,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1), (1, 5, 1)],
        )
        .unwrap();
        let m = max_matching(&g, &dfs_fallback_forest(&g)).unwrap();
        let f = dfs_fallback_forest(&g);
        m.validate_on(&g, &f.full_view()).unwrap();
        assert_eq!(m.len(), brute_max_matching(&g).unwrap().0);
    }

    #[test]
    fn solver_matches_oracle_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let g = crate::gen::random_graph(n, 0.4, 1..=1, false, &mut rng);
            let forest = dfs_fallback_forest(&g);
            let m = max_matching(&g, &forest).unwrap();
            m.validate_on(&g, &forest.full_view()).unwrap();
            assert_eq!(m.len(), brute_max_matching(&g).unwrap().0);
        }
    }

    /// Each increment grows the part's matching by zero or one edge, and
    /// union sizes add up.
    #[test]
    fn increment_size_invariant() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(2..=10);
            let g = crate::gen::random_graph(n, 0.5, 1..=1, false, &mut rng);
            let forest = dfs_fallback_forest(&g);
            let mut problem = MaxMatchingProblem::new(n);
            let (size, _) = framework::compute(&g, &forest, &mut problem).unwrap();
            assert_eq!(problem.augment_calls, n as u64);
            assert_eq!(size, Matching::from_raw(problem.mate).len());
        }
    }
}
