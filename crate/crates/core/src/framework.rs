//! Generic divide-and-conquer driver over elimination forests.
//!
//! A [`Problem`] supplies three pieces: a constant base value for the empty
//! set, an `increment` step that extends a solved vertex set by the root of
//! its subtree, and a `union` step that merges solutions of parts with no
//! edges between them. [`compute`] runs the recursion bottom-up over the
//! forest and returns the value for the whole vertex set together with a
//! [`CostLedger`] mirroring the per-call time budget.

use crate::error::{Error, Result};
use crate::forest::{validate_forest, EliminationForest};
use crate::graph::{Graph, VertexSetView};

/// Budget accounting for one [`compute`] run.
///
/// Each `increment` on subtree X ∪ {x} charges |X ∪ {x}| vertex touches and
/// |E[X ∪ {x}]| edge touches; each `union` over parts with union S charges
/// |S| and |E[S]|. Summed over a run this is exactly the work the recursion
/// allots to the callbacks, and is bounded by (2k + 1) * (n + m) for a
/// depth-k forest.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostLedger {
    pub increment_calls: u64,
    pub union_calls: u64,
    pub edge_touches: u64,
    pub vertex_touches: u64,
}

impl CostLedger {
    pub fn merge(&mut self, other: &CostLedger) {
        self.increment_calls += other.increment_calls;
        self.union_calls += other.union_calls;
        self.edge_touches += other.edge_touches;
        self.vertex_touches += other.vertex_touches;
    }
}

/// A problem instance for the divide-and-conquer driver.
///
/// Callbacks must not mutate the shared graph or forest, and `union` over a
/// single part must return that part's value unchanged. Callbacks may keep
/// mutable scratch state in `self`.
pub trait Problem {
    type Value;

    /// Value of the empty vertex set.
    fn base(&mut self) -> Self::Value;

    /// Extend the value of X to X ∪ {x}. `view` covers X ∪ {x}; `x` is the
    /// subtree root, so X = view minus x.
    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        x: usize,
        inner: Self::Value,
    ) -> Result<Self::Value>;

    /// Merge the values of disjoint parts with no edges between them. Parts
    /// arrive in ascending root id and there is always at least one.
    fn union(
        &mut self,
        g: &Graph,
        parts: Vec<(VertexSetView<'_>, Self::Value)>,
    ) -> Result<Self::Value>;
}

/// Run the recursion over the forest and return the value for the whole
/// vertex set. The forest must be a valid elimination forest of `g`.
///
/// The recursion is evaluated with an explicit post-order stack, so path-like
/// forests of depth n do not overflow the call stack. Children are processed
/// in ascending vertex id.
pub fn compute<P: Problem>(
    g: &Graph,
    forest: &EliminationForest,
    problem: &mut P,
) -> Result<(P::Value, CostLedger)> {
    validate_forest(g, forest)?;
    let mut ledger = CostLedger::default();
    let n = g.n();
    let mut value: Vec<Option<P::Value>> = (0..n).map(|_| None).collect();

    // Post-order over the preorder sequence: a parent follows all vertices of
    // its subtree when the preorder is walked backwards.
    for &x in forest.preorder().iter().rev() {
        let inner = if forest.children(x).is_empty() {
            problem.base()
        } else {
            let parts: Vec<(VertexSetView<'_>, P::Value)> = forest
                .children(x)
                .iter()
                .map(|&c| (forest.subtree_view(c), value[c].take().unwrap()))
                .collect();
            charge_union(g, &parts, &mut ledger);
            problem
                .union(g, parts)
                .map_err(|e| wrap(x, e))?
        };
        let view = forest.subtree_view(x);
        ledger.increment_calls += 1;
        ledger.vertex_touches += view.len() as u64;
        ledger.edge_touches += view.edge_count(g) as u64;
        let v = problem
            .increment(g, &view, x, inner)
            .map_err(|e| wrap(x, e))?;
        value[x] = Some(v);
    }

    if forest.roots().is_empty() {
        // Empty graph: the recursion is a single base case and no union runs.
        return Ok((problem.base(), ledger));
    }
    let parts: Vec<(VertexSetView<'_>, P::Value)> = forest
        .roots()
        .iter()
        .map(|&r| (forest.subtree_view(r), value[r].take().unwrap()))
        .collect();
    charge_union(g, &parts, &mut ledger);
    let root_of_first = forest.roots()[0];
    let result = problem
        .union(g, parts)
        .map_err(|e| wrap(root_of_first, e))?;
    Ok((result, ledger))
}

fn charge_union<V>(g: &Graph, parts: &[(VertexSetView<'_>, V)], ledger: &mut CostLedger) {
    ledger.union_calls += 1;
    for (view, _) in parts {
        ledger.vertex_touches += view.len() as u64;
        ledger.edge_touches += view.edge_count(g) as u64;
    }
}

fn wrap(root: usize, e: Error) -> Error {
    Error::Callback {
        root,
        source: Box::new(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;

    /// f(S) = number of edges of G[S]: increment adds the new vertex's
    /// incident edge count within the view, union sums.
    struct EdgeCount;

    impl Problem for EdgeCount {
        type Value = usize;

        fn base(&mut self) -> usize {
            0
        }

        fn increment(
            &mut self,
            g: &Graph,
            view: &VertexSetView<'_>,
            x: usize,
            inner: usize,
        ) -> Result<usize> {
            let mut deg = view.edges_from(g, x).count();
            if g.is_directed() {
                deg += view.edges_into(g, x).count();
            }
            Ok(inner + deg)
        }

        fn union(
            &mut self,
            _g: &Graph,
            parts: Vec<(VertexSetView<'_>, usize)>,
        ) -> Result<usize> {
            Ok(parts.into_iter().map(|(_, v)| v).sum())
        }
    }

    fn forest(parents: &[i64]) -> EliminationForest {
        let p = parents
            .iter()
            .map(|&x| if x < 0 { None } else { Some(x as usize) })
            .collect();
        EliminationForest::from_parents(p).unwrap()
    }

    #[test]
    fn edge_count_p4() {
        let g = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let f = forest(&[1, -1, 1, 2]);
        let (m, _) = compute(&g, &f, &mut EdgeCount).unwrap();
        assert_eq!(m, 3);
    }

    #[test]
    fn edge_count_empty_graph() {
        let g = Graph::undirected(0, &[]).unwrap();
        let f = EliminationForest::from_parents(vec![]).unwrap();
        let (m, ledger) = compute(&g, &f, &mut EdgeCount).unwrap();
        assert_eq!(m, 0);
        assert_eq!(ledger.increment_calls, 0);
    }

    #[test]
    fn edge_count_triangle_chain_ledger() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let f = forest(&[-1, 0, 1]);
        let (m, ledger) = compute(&g, &f, &mut EdgeCount).unwrap();
        assert_eq!(m, 3);
        assert_eq!(ledger.increment_calls, 3);
        assert!(ledger.union_calls <= 3);
    }

    #[test]
    fn rejects_invalid_forest() {
        let g = Graph::undirected(3, &[(1, 2, 1)]).unwrap();
        let f = forest(&[-1, 0, 0]);
        assert!(matches!(
            compute(&g, &f, &mut EdgeCount),
            Err(Error::ForestViolation { .. })
        ));
    }

    #[test]
    fn random_graphs_edge_count_and_budget() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let n = rng.gen_range(1..14);
            let directed = rng.gen_bool(0.5);
            let g = crate::gen::random_graph(n, 0.4, -4..=4, directed, &mut rng);
            let f = dfs_fallback_forest(&g);
            let (m, ledger) = compute(&g, &f, &mut EdgeCount).unwrap();
            assert_eq!(m, g.m());
            assert_eq!(ledger.increment_calls, n as u64);
            assert!(ledger.union_calls <= n as u64);
            let k = f.depth() as u64;
            let budget = (2 * k + 1) * (g.n() as u64 + g.m() as u64);
            assert!(ledger.edge_touches <= budget);
            assert!(ledger.vertex_touches + ledger.edge_touches <= budget + budget);
        }
    }
}
