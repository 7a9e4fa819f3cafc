//! Replacement paths: for every edge e of a given shortest s-t path P, the
//! length of the shortest s-t path avoiding e.
//!
//! Per part S the solver keeps a succinct list of values only at path
//! vertices inside S; a value at index i stands for all following indices up
//! to the next listed one. The incremental step runs two Dijkstra passes
//! (from and to the new vertex, with P's edges removed) and combines them
//! with prefix/suffix sweeps; the union step merges lists with a small
//! positional heap over the parts.

use crate::dijkstra::{DijkstraBuf, Dir};
use crate::error::{Error, Result};
use crate::forest::EliminationForest;
use crate::framework::{self, Problem};
use crate::graph::{Graph, VertexSetView};

/// The fixed shortest path P with its prefix/suffix lengths.
#[derive(Debug, Clone)]
pub struct PathContext {
    pub path: Vec<usize>,
    pub pref: Vec<i64>,
    pub suf: Vec<i64>,
    /// Path index of each vertex, if on P.
    index_of: Vec<Option<usize>>,
    /// Edge ids of P, indexed by edge id.
    on_path: Vec<bool>,
}

impl PathContext {
    /// Build from a vertex sequence; checks arcs exist, weights are
    /// non-negative and vertices are distinct. Shortest-ness is validated
    /// separately by [`replacement_paths`].
    pub fn new(g: &Graph, path: &[usize]) -> Result<Self> {
        if !g.is_directed() {
            return Err(Error::contract("replacement paths expect a directed graph"));
        }
        g.require_nonnegative()?;
        if path.is_empty() {
            return Err(Error::contract("empty path"));
        }
        let mut index_of = vec![None; g.n()];
        for (i, &v) in path.iter().enumerate() {
            if v >= g.n() {
                return Err(Error::contract(format!("path vertex {v} out of range")));
            }
            if index_of[v].is_some() {
                return Err(Error::NotShortestPath(format!("path repeats vertex {v}")));
            }
            index_of[v] = Some(i);
        }
        let mut on_path = vec![false; g.m()];
        let mut pref = vec![0i64; path.len()];
        for (i, w) in path.windows(2).enumerate() {
            let id = g.find_edge(w[0], w[1]).ok_or_else(|| {
                Error::NotShortestPath(format!("path arc ({}, {}) missing", w[0], w[1]))
            })?;
            on_path[id] = true;
            pref[i + 1] = pref[i].checked_add(g.edge(id).w).ok_or(Error::Overflow)?;
        }
        let total = *pref.last().unwrap();
        let suf = pref.iter().map(|&p| total - p).collect();
        Ok(PathContext {
            path: path.to_vec(),
            pref,
            suf,
            index_of,
            on_path,
        })
    }

    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn source(&self) -> usize {
        self.path[0]
    }

    pub fn target(&self) -> usize {
        *self.path.last().unwrap()
    }

    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.index_of[v]
    }

    pub fn edge_mask(&self) -> &[bool] {
        &self.on_path
    }
}

/// Succinct replacement-value list: `(path index, value)` pairs with strictly
/// increasing indices; `None` = unreachable. The value at an unlisted index
/// is the value at the latest listed index before it (or `None`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReplacementTable {
    pub entries: Vec<(usize, Option<i64>)>,
}

impl ReplacementTable {
    /// Expansion rule lookup.
    pub fn expanded_at(&self, i: usize) -> Option<i64> {
        match self.entries.partition_point(|&(j, _)| j <= i) {
            0 => None,
            k => self.entries[k - 1].1,
        }
    }
}

/// Extend the table for X to X ∪ {x}; `view` covers X ∪ {x} with root `x`.
pub fn replacement_increment(
    g: &Graph,
    ctx: &PathContext,
    view: &VertexSetView<'_>,
    f_x: &ReplacementTable,
    x: usize,
) -> Result<ReplacementTable> {
    let mut bufs = (DijkstraBuf::new(g.n()), DijkstraBuf::new(g.n()));
    increment_inner(g, ctx, view, f_x, x, &mut bufs.0, &mut bufs.1)
}

fn increment_inner(
    g: &Graph,
    ctx: &PathContext,
    view: &VertexSetView<'_>,
    f_x: &ReplacementTable,
    x: usize,
    buf_from: &mut DijkstraBuf,
    buf_to: &mut DijkstraBuf,
) -> Result<ReplacementTable> {
    // Distances from and to x inside the view, with all of P's edges removed
    // (even those between view vertices).
    buf_from.run(g, view, x, Dir::Forward, Some(ctx.edge_mask()), None);
    buf_to.run(g, view, x, Dir::Reverse, Some(ctx.edge_mask()), None);

    // Path indices of view members, ascending. Indices up to and including
    // the path end take part in the sweeps; output entries stop before it.
    let mut listed: Vec<usize> = view.vertices().filter_map(|v| ctx.index_of(v)).collect();
    listed.sort_unstable();

    // l[k]: min over listed a <= listed[k] of pref(v_a) + d(v_a, x).
    let mut l_vals = vec![None; listed.len()];
    let mut running: Option<i64> = None;
    for (k, &i) in listed.iter().enumerate() {
        let v = ctx.path[i];
        if let Some(d) = buf_to.dist(v) {
            let cand = ctx.pref[i].checked_add(d).ok_or(Error::Overflow)?;
            running = Some(running.map_or(cand, |r: i64| r.min(cand)));
        }
        l_vals[k] = running;
    }
    // r[k]: min over listed b > listed[k] of d(x, v_b) + suf(v_b).
    let mut r_vals = vec![None; listed.len()];
    let mut running: Option<i64> = None;
    for (k, &i) in listed.iter().enumerate().rev() {
        r_vals[k] = running;
        let v = ctx.path[i];
        if let Some(d) = buf_from.dist(v) {
            let cand = d.checked_add(ctx.suf[i]).ok_or(Error::Overflow)?;
            running = Some(running.map_or(cand, |r: i64| r.min(cand)));
        }
    }

    // New value at i: min of the old value (expansion rule) and L_i + R_i.
    let mut entries = Vec::new();
    let mut old = f_x.entries.iter().peekable();
    let mut carried: Option<i64> = None;
    for (k, &i) in listed.iter().enumerate() {
        if i >= ctx.len() {
            break; // the path end carries no edge
        }
        while let Some(&&(j, v)) = old.peek() {
            if j <= i {
                carried = v;
                old.next();
            } else {
                break;
            }
        }
        let via_x = match (l_vals[k], r_vals[k]) {
            (Some(a), Some(b)) => Some(a.checked_add(b).ok_or(Error::Overflow)?),
            _ => None,
        };
        entries.push((i, min_opt(carried, via_x)));
    }
    Ok(ReplacementTable { entries })
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Merge the tables of parts with no edges between them: sweep the listed
/// indices in ascending order, keep each part's current value in a
/// positional heap, and report the minimum over parts at each index.
pub fn replacement_union(
    ctx: &PathContext,
    parts: &[(VertexSetView<'_>, ReplacementTable)],
) -> Result<ReplacementTable> {
    let _ = ctx;
    let mut stream: Vec<(usize, usize, Option<i64>)> = Vec::new();
    for (j, (_, table)) in parts.iter().enumerate() {
        for &(i, v) in &table.entries {
            stream.push((i, j, v));
        }
    }
    stream.sort_unstable_by_key(|&(i, j, _)| (i, j));
    let mut heap = PositionalMinHeap::new(parts.len());
    let mut entries = Vec::with_capacity(stream.len());
    for (i, j, v) in stream {
        heap.update(j, v);
        entries.push((i, heap.min()));
    }
    Ok(ReplacementTable { entries })
}

/// A tiny addressable min-heap over a fixed set of slots, keyed by
/// `Option<i64>` with `None` = infinity. Updates cost O(log c).
struct PositionalMinHeap {
    key: Vec<i64>,
    heap: Vec<usize>,
    pos: Vec<usize>,
}

impl PositionalMinHeap {
    fn new(c: usize) -> Self {
        PositionalMinHeap {
            key: vec![i64::MAX; c],
            heap: (0..c).collect(),
            pos: (0..c).collect(),
        }
    }

    fn update(&mut self, slot: usize, value: Option<i64>) {
        self.key[slot] = value.unwrap_or(i64::MAX);
        self.sift_up(self.pos[slot]);
        self.sift_down(self.pos[slot]);
    }

    fn min(&self) -> Option<i64> {
        match self.key[self.heap[0]] {
            i64::MAX => None,
            v => Some(v),
        }
    }

    fn less(&self, a: usize, b: usize) -> bool {
        self.key[self.heap[a]] < self.key[self.heap[b]]
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a]] = a;
        self.pos[self.heap[b]] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let p = (i - 1) / 2;
            if self.less(i, p) {
                self.swap(i, p);
                i = p;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && self.less(l, best) {
                best = l;
            }
            if r < self.heap.len() && self.less(r, best) {
                best = r;
            }
            if best == i {
                return;
            }
            self.swap(i, best);
            i = best;
        }
    }
}

struct ReplacementProblem<'a> {
    ctx: &'a PathContext,
    buf_from: DijkstraBuf,
    buf_to: DijkstraBuf,
}

impl Problem for ReplacementProblem<'_> {
    type Value = ReplacementTable;

    fn base(&mut self) -> ReplacementTable {
        ReplacementTable::default()
    }

    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        x: usize,
        inner: ReplacementTable,
    ) -> Result<ReplacementTable> {
        increment_inner(g, self.ctx, view, &inner, x, &mut self.buf_from, &mut self.buf_to)
    }

    fn union(
        &mut self,
        _g: &Graph,
        parts: Vec<(VertexSetView<'_>, ReplacementTable)>,
    ) -> Result<ReplacementTable> {
        replacement_union(self.ctx, &parts)
    }
}

/// For each edge (path[i], path[i+1]) of the given shortest s-t path, the
/// length of the shortest s-t path avoiding that edge (`None` when none
/// exists). The path is validated against a Dijkstra pass.
pub fn replacement_paths(
    g: &Graph,
    forest: &EliminationForest,
    path: &[usize],
) -> Result<Vec<Option<i64>>> {
    let ctx = PathContext::new(g, path)?;
    // P must be a shortest s-t path.
    let mut buf = DijkstraBuf::new(g.n());
    buf.run(g, &forest.full_view(), ctx.source(), Dir::Forward, None, None);
    let total = ctx.pref[ctx.len()];
    match buf.dist(ctx.target()) {
        Some(d) if d == total => {}
        got => {
            return Err(Error::NotShortestPath(format!(
                "path length {total} but true distance is {got:?}"
            )))
        }
    }
    if ctx.len() == 0 {
        return Ok(Vec::new());
    }
    let mut problem = ReplacementProblem {
        ctx: &ctx,
        buf_from: DijkstraBuf::new(g.n()),
        buf_to: DijkstraBuf::new(g.n()),
    };
    let (table, _) = framework::compute(g, forest, &mut problem)?;
    // At the top level every path vertex is present, so the list is complete.
    Ok((0..ctx.len()).map(|i| table.expanded_at(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;
    use crate::oracles::naive_replacement;

    #[test]
    fn increment_detour_over_root() {
        let g = Graph::directed(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 5)]).unwrap();
        let ctx = PathContext::new(&g, &[0, 1, 2]).unwrap();
        // Forest with subtree {0, 2}: 0 -> 2, and 1 a separate root.
        let f = EliminationForest::from_parents(vec![None, None, Some(0)]).unwrap();
        let view = f.subtree_view(0);
        // X = {2} lists nothing: index 2 is the path end.
        let table = replacement_increment(&g, &ctx, &view, &ReplacementTable::default(), 0)
            .unwrap();
        assert_eq!(table.entries, vec![(0, Some(5))]);
        assert_eq!(table.expanded_at(1), Some(5));
    }

    #[test]
    fn path_only_graph_all_infinite() {
        let g = Graph::directed(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let r = replacement_paths(&g, &f, &[0, 1, 2]).unwrap();
        assert_eq!(r, vec![None, None]);
    }

    #[test]
    fn middle_segment_detour() {
        // P = 0..3 unit weights, detour 1 -> 4 -> 2 of weight 2.
        let g = Graph::directed(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (1, 4, 1), (4, 2, 1)],
        )
        .unwrap();
        let f = dfs_fallback_forest(&g);
        let r = replacement_paths(&g, &f, &[0, 1, 2, 3]).unwrap();
        assert_eq!(r, vec![None, Some(4), None]);
    }

    #[test]
    fn single_edge_path() {
        let g = Graph::directed(2, &[(0, 1, 3)]).unwrap();
        let f = dfs_fallback_forest(&g);
        assert_eq!(replacement_paths(&g, &f, &[0, 1]).unwrap(), vec![None]);
    }

    #[test]
    fn rejects_non_shortest_path() {
        let g = Graph::directed(3, &[(0, 1, 5), (1, 2, 5), (0, 2, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        assert!(matches!(
            replacement_paths(&g, &f, &[0, 1, 2]),
            Err(Error::NotShortestPath(_))
        ));
    }

    #[test]
    fn union_merges_tables() {
        let g = Graph::directed(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let ctx = PathContext::new(&g, &[0, 1, 2, 3]).unwrap();
        let f = EliminationForest::from_parents(vec![None, None, None, None]).unwrap();
        let parts = vec![
            (
                f.subtree_view(0),
                ReplacementTable {
                    entries: vec![(0, Some(7))],
                },
            ),
            (
                f.subtree_view(1),
                ReplacementTable {
                    entries: vec![(1, Some(5))],
                },
            ),
        ];
        let merged = replacement_union(&ctx, &parts).unwrap();
        assert_eq!(merged.entries, vec![(0, Some(7)), (1, Some(5))]);

        // A single part passes through unchanged.
        let single = vec![(
            f.subtree_view(0),
            ReplacementTable {
                entries: vec![(0, Some(7)), (2, None)],
            },
        )];
        let id = replacement_union(&ctx, &single).unwrap();
        assert_eq!(id.entries, vec![(0, Some(7)), (2, None)]);

        // An all-infinite part never lowers anything.
        let parts = vec![
            (
                f.subtree_view(0),
                ReplacementTable {
                    entries: vec![(0, None), (2, None)],
                },
            ),
            (
                f.subtree_view(1),
                ReplacementTable {
                    entries: vec![(1, Some(4))],
                },
            ),
        ];
        let merged = replacement_union(&ctx, &parts).unwrap();
        assert_eq!(
            merged.entries,
            vec![(0, None), (1, Some(4)), (2, Some(4))]
        );
    }

    #[test]
    fn matches_oracle_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let mut tested = 0;
        while tested < 200 {
            let n = rng.gen_range(2..=15);
            let g = crate::gen::random_graph(n, 0.3, 0..=9, true, &mut rng);
            let forest = dfs_fallback_forest(&g);
            // Pick a random reachable pair and a shortest path via Dijkstra.
            let s = rng.gen_range(0..n);
            let mut buf = DijkstraBuf::new(n);
            buf.run(&g, &forest.full_view(), s, Dir::Forward, None, None);
            let targets: Vec<usize> = (0..n)
                .filter(|&t| t != s && buf.dist(t).is_some())
                .collect();
            if targets.is_empty() {
                continue;
            }
            let t = targets[rng.gen_range(0..targets.len())];
            let mut path = buf.path_to_source(t);
            path.reverse();
            let ours = replacement_paths(&g, &forest, &path).unwrap();
            let oracle = naive_replacement(&g, &path).unwrap();
            assert_eq!(ours, oracle);
            tested += 1;
        }
    }
}
