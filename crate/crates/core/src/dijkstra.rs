//! Internal Dijkstra with reusable, stamp-reset scratch buffers.
//!
//! All solvers run many searches restricted to subtree views; buffers are
//! sized once for the whole graph and invalidated by bumping a stamp, so a
//! search costs O(|view| log |view| + |E[view]|) regardless of n.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, VertexSetView};

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Dir {
    Forward,
    Reverse,
}

pub(crate) struct DijkstraBuf {
    dist: Vec<i64>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    stamp: Vec<u32>,
    done: Vec<u32>,
    cur: u32,
    heap: BinaryHeap<Reverse<(i64, usize)>>,
    popped: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl DijkstraBuf {
    pub fn new(n: usize) -> Self {
        DijkstraBuf {
            dist: vec![0; n],
            parent: vec![NONE; n],
            parent_edge: vec![NONE; n],
            stamp: vec![0; n],
            done: vec![0; n],
            cur: 0,
            heap: BinaryHeap::new(),
            popped: Vec::new(),
        }
    }

    /// Shortest-path search from `source` within `view`.
    ///
    /// * `dir`: `Forward` gives distances from the source, `Reverse`
    ///   distances to it (arcs traversed backwards).
    /// * `skip_edge`: edge ids to ignore (indexed by edge id), or `None`.
    /// * `potential`: reduced weights w(uv) + p(u) - p(v) instead of w.
    ///
    /// Reduced weights must be non-negative. Ties are broken by vertex id.
    pub fn run(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        source: usize,
        dir: Dir,
        skip_edge: Option<&[bool]>,
        potential: Option<&[i64]>,
    ) {
        debug_assert!(view.contains(source));
        if self.cur == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.done.iter_mut().for_each(|s| *s = 0);
            self.cur = 0;
        }
        self.cur += 1;
        self.heap.clear();
        self.popped.clear();

        self.set(source, 0, NONE, NONE);
        self.heap.push(Reverse((0, source)));
        while let Some(Reverse((d, v))) = self.heap.pop() {
            if self.done[v] == self.cur {
                continue;
            }
            self.done[v] = self.cur;
            self.popped.push(v);
            let ids = match dir {
                Dir::Forward => g.out_edges(v),
                Dir::Reverse => g.in_edges(v),
            };
            for &id in ids {
                let to = g.other_endpoint(id, v);
                if !view.contains(to) {
                    continue;
                }
                if let Some(skip) = skip_edge {
                    if skip[id] {
                        continue;
                    }
                }
                if self.done[to] == self.cur {
                    continue;
                }
                let e = g.edge(id);
                let mut w = e.w;
                if let Some(p) = potential {
                    // Reduced weight along the arc's own direction. For
                    // undirected graphs the traversal direction decides.
                    let (head, tail) = if g.is_directed() {
                        (e.u, e.v)
                    } else {
                        (v, to)
                    };
                    w = w
                        .checked_add(p[head])
                        .and_then(|x| x.checked_sub(p[tail]))
                        .expect("reduced weight overflowed i64");
                }
                debug_assert!(w >= 0, "negative weight {w} in Dijkstra");
                let nd = d.checked_add(w).expect("path length overflowed i64");
                if self.stamp[to] != self.cur || nd < self.dist[to] {
                    self.set(to, nd, v, id);
                    self.heap.push(Reverse((nd, to)));
                }
            }
        }
    }

    fn set(&mut self, v: usize, d: i64, par: usize, pe: usize) {
        self.dist[v] = d;
        self.parent[v] = par;
        self.parent_edge[v] = pe;
        self.stamp[v] = self.cur;
    }

    /// Distance of `v` in the latest run, `None` if unreached.
    pub fn dist(&self, v: usize) -> Option<i64> {
        (self.stamp[v] == self.cur).then(|| self.dist[v])
    }

    /// Tree parent of `v` in the latest run (`None` for the source or
    /// unreached vertices).
    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.stamp[v] == self.cur && self.parent[v] != NONE).then(|| self.parent[v])
    }

    /// Edge id connecting `v` to its tree parent.
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        (self.stamp[v] == self.cur && self.parent_edge[v] != NONE).then(|| self.parent_edge[v])
    }

    /// Vertices finalized by the latest run, in pop order.
    pub fn popped(&self) -> &[usize] {
        &self.popped
    }

    /// Walk tree parents from `v` back to the source, inclusive.
    pub fn path_to_source(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path
    }
}
