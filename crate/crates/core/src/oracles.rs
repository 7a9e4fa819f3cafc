//! Independent reference implementations used to cross-check the solvers.
//!
//! Everything here is deliberately naive and self-contained (sharing only the
//! graph type with the rest of the crate): exhaustive matching enumeration,
//! textbook Bellman-Ford, per-edge-deletion replacement paths, simple-cycle
//! enumeration, and all-pairs Dijkstra. Exhaustive routines refuse instances
//! over their size limits so accidental misuse fails loudly.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MATCHING_LIMIT: usize = 10;
pub const MIN_CYCLE_LIMIT: usize = 9;
pub const A_PATHS_LIMIT: usize = 8;

fn require(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Exhaustive maximum-cardinality matching. Returns the size and one witness.
pub fn brute_max_matching(g: &Graph) -> Result<(usize, Vec<(usize, usize)>)> {
    require(g.n(), MATCHING_LIMIT)?;
    let mut mate = vec![usize::MAX; g.n()];
    let mut best: (usize, Vec<(usize, usize)>) = (0, Vec::new());
    enumerate_matchings(g, 0, &mut mate, &mut Vec::new(), &mut |chosen| {
        if chosen.len() > best.0 {
            best = (chosen.len(), chosen.to_vec());
        }
    });
    Ok(best)
}

/// Exhaustive maximum-weight matching (any cardinality, empty allowed).
pub fn brute_max_weight_matching(g: &Graph) -> Result<(i64, Vec<(usize, usize)>)> {
    require(g.n(), MATCHING_LIMIT)?;
    let mut mate = vec![usize::MAX; g.n()];
    let mut best: (i64, Vec<(usize, usize)>) = (0, Vec::new());
    enumerate_matchings(g, 0, &mut mate, &mut Vec::new(), &mut |chosen| {
        let w = weight_of(g, chosen);
        if w > best.0 {
            best = (w, chosen.to_vec());
        }
    });
    Ok(best)
}

/// Exhaustive maximum-weight matching among the maximum-cardinality ones.
pub fn brute_max_weight_max_size_matching(g: &Graph) -> Result<(usize, i64, Vec<(usize, usize)>)> {
    require(g.n(), MATCHING_LIMIT)?;
    let mut mate = vec![usize::MAX; g.n()];
    let mut best: (usize, i64, Vec<(usize, usize)>) = (0, 0, Vec::new());
    enumerate_matchings(g, 0, &mut mate, &mut Vec::new(), &mut |chosen| {
        let w = weight_of(g, chosen);
        if chosen.len() > best.0 || (chosen.len() == best.0 && w > best.1) {
            best = (chosen.len(), w, chosen.to_vec());
        }
    });
    Ok(best)
}

/// Exhaustive maximum-weight perfect matching; `None` when no perfect
/// matching exists.
pub fn brute_mwpm(g: &Graph) -> Result<Option<(i64, Vec<(usize, usize)>)>> {
    require(g.n(), MATCHING_LIMIT)?;
    if g.n() % 2 != 0 {
        return Ok(None);
    }
    let mut mate = vec![usize::MAX; g.n()];
    let mut best: Option<(i64, Vec<(usize, usize)>)> = None;
    perfect_matchings(g, 0, &mut mate, &mut Vec::new(), &mut |chosen| {
        let w = weight_of(g, chosen);
        if best.as_ref().map_or(true, |(bw, _)| w > *bw) {
            best = Some((w, chosen.to_vec()));
        }
    });
    Ok(best)
}

fn weight_of(g: &Graph, edges: &[(usize, usize)]) -> i64 {
    edges
        .iter()
        .map(|&(u, v)| g.edge(g.find_edge(u, v).unwrap()).w)
        .sum()
}

/// Visit every matching once: the lowest unmatched vertex is either left
/// exposed or matched to each free neighbor in turn.
fn enumerate_matchings(
    g: &Graph,
    from: usize,
    mate: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let v = (from..g.n()).find(|&v| mate[v] == usize::MAX);
    let v = match v {
        Some(v) => v,
        None => {
            visit(chosen);
            return;
        }
    };
    // v stays exposed.
    mate[v] = v;
    enumerate_matchings(g, v + 1, mate, chosen, visit);
    mate[v] = usize::MAX;
    for &id in g.out_edges(v) {
        let u = g.other_endpoint(id, v);
        if u > v && mate[u] == usize::MAX {
            mate[v] = u;
            mate[u] = v;
            chosen.push((v, u));
            enumerate_matchings(g, v + 1, mate, chosen, visit);
            chosen.pop();
            mate[v] = usize::MAX;
            mate[u] = usize::MAX;
        }
    }
}

fn perfect_matchings(
    g: &Graph,
    from: usize,
    mate: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let v = (from..g.n()).find(|&v| mate[v] == usize::MAX);
    let v = match v {
        Some(v) => v,
        None => {
            visit(chosen);
            return;
        }
    };
    for &id in g.out_edges(v) {
        let u = g.other_endpoint(id, v);
        if u > v && mate[u] == usize::MAX {
            mate[v] = u;
            mate[u] = v;
            chosen.push((v, u));
            perfect_matchings(g, v + 1, mate, chosen, visit);
            chosen.pop();
            mate[v] = usize::MAX;
            mate[u] = usize::MAX;
        }
    }
}

/// Outcome of [`bellman_ford`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BellmanFord {
    /// Shortest-path distances from the source; `None` = unreachable.
    Distances(Vec<Option<i64>>),
    /// A reachable negative cycle, as its vertex sequence.
    NegativeCycle(Vec<usize>),
}

/// Textbook Bellman-Ford from `s`. Undirected edges are relaxed in both
/// directions.
pub fn bellman_ford(g: &Graph, s: usize) -> BellmanFord {
    let mut dist: Vec<Option<i64>> = vec![None; g.n()];
    dist[s] = Some(0);
    bellman_ford_loop(g, dist)
}

/// Graph-wide negative cycle detection: Bellman-Ford from a virtual source
/// connected to every vertex with weight 0.
pub fn bellman_ford_any_negative_cycle(g: &Graph) -> Option<Vec<usize>> {
    let dist: Vec<Option<i64>> = vec![Some(0); g.n()];
    match bellman_ford_loop(g, dist) {
        BellmanFord::NegativeCycle(c) => Some(c),
        BellmanFord::Distances(_) => None,
    }
}

fn bellman_ford_loop(g: &Graph, mut dist: Vec<Option<i64>>) -> BellmanFord {
    let n = g.n();
    let mut pred: Vec<usize> = vec![usize::MAX; n];
    let mut arcs: Vec<(usize, usize, i64)> = Vec::with_capacity(g.m() * 2);
    for e in g.edges() {
        arcs.push((e.u, e.v, e.w));
        if !g.is_directed() {
            arcs.push((e.v, e.u, e.w));
        }
    }
    let mut last_relaxed = usize::MAX;
    for round in 0..n {
        let mut changed = false;
        for &(u, v, w) in &arcs {
            if let Some(du) = dist[u] {
                let cand = du + w;
                if dist[v].map_or(true, |dv| cand < dv) {
                    dist[v] = Some(cand);
                    pred[v] = u;
                    changed = true;
                    last_relaxed = v;
                }
            }
        }
        if !changed {
            return BellmanFord::Distances(dist);
        }
        if round == n - 1 {
            // Still relaxing after n rounds: walk predecessors into the cycle.
            let mut v = last_relaxed;
            for _ in 0..n {
                v = pred[v];
            }
            let mut cycle = vec![v];
            let mut cur = pred[v];
            while cur != v {
                cycle.push(cur);
                cur = pred[cur];
            }
            cycle.reverse();
            return BellmanFord::NegativeCycle(cycle);
        }
    }
    BellmanFord::Distances(dist)
}

/// Plain full-graph Dijkstra used only by oracles. Non-negative weights.
fn oracle_dijkstra(g: &Graph, s: usize, skip_edge: Option<usize>) -> Vec<Option<i64>> {
    let mut dist: Vec<Option<i64>> = vec![None; g.n()];
    dist[s] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, s)));
    let mut done = vec![false; g.n()];
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &id in g.out_edges(v) {
            if Some(id) == skip_edge {
                continue;
            }
            let e = g.edge(id);
            debug_assert!(e.w >= 0);
            let to = g.other_endpoint(id, v);
            let nd = d + e.w;
            if dist[to].map_or(true, |old| nd < old) {
                dist[to] = Some(nd);
                heap.push(Reverse((nd, to)));
            }
        }
    }
    dist
}

/// Replacement distances by deleting each path edge and re-running Dijkstra.
/// `path` is the vertex sequence of a (shortest) s-t path; entry i is the
/// shortest s-t distance avoiding edge (path[i], path[i+1]).
pub fn naive_replacement(g: &Graph, path: &[usize]) -> Result<Vec<Option<i64>>> {
    g.require_nonnegative()?;
    let s = *path.first().ok_or_else(|| Error::contract("empty path"))?;
    let t = *path.last().unwrap();
    let mut out = Vec::with_capacity(path.len().saturating_sub(1));
    for w in path.windows(2) {
        let id = g
            .find_edge(w[0], w[1])
            .ok_or_else(|| Error::contract(format!("path edge ({}, {}) missing", w[0], w[1])))?;
        out.push(oracle_dijkstra(g, s, Some(id))[t]);
    }
    Ok(out)
}

/// Exhaustive minimum-weight cycle by enumerating simple cycles. Directed
/// cycles have length >= 2, undirected ones length >= 3 (a closed walk using
/// one edge twice is not a cycle). `None` when acyclic.
pub fn brute_min_cycle(g: &Graph) -> Result<Option<(i64, Vec<usize>)>> {
    require(g.n(), MIN_CYCLE_LIMIT)?;
    g.require_nonnegative()?;
    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; g.n()];

    fn dfs(
        g: &Graph,
        start: usize,
        v: usize,
        w_sum: i64,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        best: &mut Option<(i64, Vec<usize>)>,
    ) {
        for &id in g.out_edges(v) {
            let to = g.other_endpoint(id, v);
            if to < start {
                continue;
            }
            let w = g.edge(id).w;
            if to == start {
                let min_len = if g.is_directed() { 2 } else { 3 };
                if path.len() >= min_len {
                    let total = w_sum + w;
                    if best.as_ref().map_or(true, |(bw, _)| total < *bw) {
                        *best = Some((total, path.clone()));
                    }
                }
            } else if !on_path[to] {
                on_path[to] = true;
                path.push(to);
                dfs(g, start, to, w_sum + w, path, on_path, best);
                path.pop();
                on_path[to] = false;
            }
        }
    }

    for start in 0..g.n() {
        on_path[start] = true;
        path.push(start);
        dfs(g, start, start, 0, &mut path, &mut on_path, &mut best);
        path.pop();
        on_path[start] = false;
    }
    Ok(best)
}

/// All-pairs shortest distances by one Dijkstra per source (non-negative
/// weights).
pub fn all_pairs_dijkstra(g: &Graph) -> Result<Vec<Vec<Option<i64>>>> {
    g.require_nonnegative()?;
    Ok((0..g.n()).map(|s| oracle_dijkstra(g, s, None)).collect())
}

/// Exhaustive minimum-weight maximum-count disjoint terminal paths of a
/// directed graph: paths connect two distinct terminals, have no interior
/// terminal, and share no vertices. Returns (number of paths, total weight).
pub fn brute_min_weight_a_paths(g: &Graph, terminals: &[usize]) -> Result<(usize, i64)> {
    require(g.n(), A_PATHS_LIMIT)?;
    g.require_nonnegative()?;
    if !g.is_directed() {
        return Err(Error::contract("terminal-path oracle expects a digraph"));
    }
    let is_terminal = {
        let mut t = vec![false; g.n()];
        for &a in terminals {
            t[a] = true;
        }
        t
    };
    // Enumerate all simple terminal-to-terminal paths as (vertex mask, weight).
    let mut paths: Vec<(u16, i64)> = Vec::new();
    fn dfs(
        g: &Graph,
        is_terminal: &[bool],
        v: usize,
        mask: u16,
        w_sum: i64,
        paths: &mut Vec<(u16, i64)>,
    ) {
        for &id in g.out_edges(v) {
            let e = g.edge(id);
            if e.u != v {
                continue;
            }
            let to = e.v;
            if mask & (1 << to) != 0 {
                continue;
            }
            if is_terminal[to] {
                paths.push((mask | (1 << to), w_sum + e.w));
            } else {
                dfs(g, is_terminal, to, mask | (1 << to), w_sum + e.w, paths);
            }
        }
    }
    for &a in terminals {
        dfs(g, &is_terminal, a, 1 << a, 0, &mut paths);
    }
    // Best disjoint packing over free-vertex masks: maximize count, then
    // minimize weight.
    let mut memo: std::collections::HashMap<u16, (usize, i64)> = Default::default();
    fn solve(
        free: u16,
        paths: &[(u16, i64)],
        memo: &mut std::collections::HashMap<u16, (usize, i64)>,
    ) -> (usize, i64) {
        if let Some(&r) = memo.get(&free) {
            return r;
        }
        let mut best = (0usize, 0i64);
        for &(mask, w) in paths {
            if mask & !free == 0 {
                let (c, sub_w) = solve(free & !mask, paths, memo);
                let cand = (c + 1, sub_w + w);
                if cand.0 > best.0 || (cand.0 == best.0 && cand.1 < best.1) {
                    best = cand;
                }
            }
        }
        memo.insert(free, best);
        best
    }
    let full: u16 = if g.n() == 16 { !0 } else { (1 << g.n()) - 1 };
    Ok(solve(full, &paths, &mut memo))
}
