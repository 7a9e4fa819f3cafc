//! Reductions from other matching-type problems to maximum-weight perfect
//! matching: doubling the graph for the non-perfect maximum-weight variant,
//! shifting weights for the maximum-weight maximum-size variant, and a
//! vertex-splitting reduction for minimum-weight disjoint terminal paths.
//! Each reduction also rewrites the elimination forest, at most doubling its
//! depth.

use crate::error::{Error, Result};
use crate::forest::EliminationForest;
use crate::graph::Graph;
use crate::matching::weighted::max_weight_perfect_matching;
use crate::matching::{Matching, UNMATCHED};

/// Doubled graph for maximum-weight (any size) matching: the original, a
/// copy, and zero-weight rungs joining each vertex to its copy. A perfect
/// matching of maximum weight restricted to the original side is a
/// maximum-weight matching.
pub struct ReducedMatching {
    pub graph: Graph,
    pub forest: EliminationForest,
    n_original: usize,
}

impl ReducedMatching {
    /// Keep the matched pairs of the original side, dropping copies and rungs.
    pub fn extract(&self, reduced: &Matching) -> Result<Matching> {
        let n = self.n_original;
        let pairs: Vec<(usize, usize)> = reduced
            .edges()
            .into_iter()
            .filter(|&(u, v)| u < n && v < n)
            .collect();
        Matching::from_edges(n, &pairs)
    }
}

/// Build the doubled graph and forest. The reduced graph has 2n vertices and
/// 2m + n edges; the reduced forest replaces each forest vertex v by the
/// path v -> v' and has exactly twice the depth.
pub fn reduce_max_weight_matching(
    g: &Graph,
    forest: &EliminationForest,
) -> Result<ReducedMatching> {
    if g.is_directed() {
        return Err(Error::contract("matching reductions expect undirected graphs"));
    }
    let n = g.n();
    let mut edges: Vec<(usize, usize, i64)> = Vec::with_capacity(2 * g.m() + n);
    for e in g.edges() {
        edges.push((e.u, e.v, e.w));
    }
    for e in g.edges() {
        edges.push((e.u + n, e.v + n, e.w));
    }
    for v in 0..n {
        edges.push((v, v + n, 0));
    }
    let graph = Graph::undirected(2 * n, &edges)?;
    let mut parent = vec![None; 2 * n];
    for v in 0..n {
        parent[v] = forest.parent(v).map(|p| p + n);
        parent[v + n] = Some(v);
    }
    let forest = EliminationForest::from_parents(parent)?;
    Ok(ReducedMatching {
        graph,
        forest,
        n_original: n,
    })
}

/// Maximum-weight matching of any cardinality (the empty matching counts, so
/// the result never has negative weight).
pub fn max_weight_matching(g: &Graph, forest: &EliminationForest) -> Result<Matching> {
    let reduction = reduce_max_weight_matching(g, forest)?;
    let (perfect, _) = max_weight_perfect_matching(&reduction.graph, &reduction.forest)?;
    reduction.extract(&perfect)
}

/// Shifted copy of `g` with w'(e) = w(e) + W for W = Σ|w(e)| + 1: any larger
/// matching beats any smaller one under w', so maximum-weight matchings
/// under w' are exactly the maximum-weight maximum-size matchings under w.
pub fn shift_for_max_size(g: &Graph) -> Result<(Graph, i64)> {
    let total = g.total_abs_weight()?;
    let shift = total.checked_add(1).ok_or(Error::Overflow)?;
    let edges: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .map(|e| {
            let w = (e.w as i128).checked_add(shift).ok_or(Error::Overflow)?;
            let w = i64::try_from(w).map_err(|_| Error::Overflow)?;
            Ok((e.u, e.v, w))
        })
        .collect::<Result<_>>()?;
    let shift = i64::try_from(shift).map_err(|_| Error::Overflow)?;
    let shifted = if g.is_directed() {
        Graph::directed(g.n(), &edges)?
    } else {
        Graph::undirected(g.n(), &edges)?
    };
    Ok((shifted, shift))
}

/// Maximum-weight matching among the maximum-cardinality ones.
pub fn max_weight_max_size_matching(g: &Graph, forest: &EliminationForest) -> Result<Matching> {
    let (shifted, _) = shift_for_max_size(g)?;
    max_weight_matching(&shifted, forest)
}

/// Disjoint terminal paths found by [`min_weight_disjoint_a_paths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APaths {
    /// Vertex sequences, each starting and ending at a terminal with no
    /// terminal inside.
    pub paths: Vec<Vec<usize>>,
    pub total_weight: i64,
}

/// Split reduction for minimum-weight disjoint terminal paths: terminals stay
/// single vertices, every other vertex v becomes a zero-weight rung
/// v+ -- v-, and each arc u -> v becomes the undirected edge u+ -- v-.
pub struct APathsReduction {
    pub graph: Graph,
    pub forest: EliminationForest,
    n_original: usize,
    plus_of: Vec<usize>,
    minus_of: Vec<usize>,
    is_terminal: Vec<bool>,
    /// Original arc behind each reduced edge; rungs map to None.
    arc_of_edge: Vec<Option<(usize, usize)>>,
}

pub fn reduce_disjoint_a_paths(
    g: &Graph,
    terminals: &[usize],
    forest: &EliminationForest,
) -> Result<APathsReduction> {
    if !g.is_directed() {
        return Err(Error::contract("terminal-path reduction expects a digraph"));
    }
    g.require_nonnegative()?;
    let n = g.n();
    let mut is_terminal = vec![false; n];
    for &a in terminals {
        if a >= n {
            return Err(Error::contract(format!("terminal {a} out of range")));
        }
        is_terminal[a] = true;
    }
    let mut plus_of = vec![0usize; n];
    let mut minus_of = vec![0usize; n];
    let mut next = 0;
    for v in 0..n {
        if is_terminal[v] {
            plus_of[v] = next;
            minus_of[v] = next;
            next += 1;
        } else {
            plus_of[v] = next;
            minus_of[v] = next + 1;
            next += 2;
        }
    }
    // Antiparallel arcs between two terminals collapse onto one undirected
    // edge; keep the cheaper arc.
    let mut best: std::collections::HashMap<(usize, usize), (i64, (usize, usize))> =
        Default::default();
    for e in g.edges() {
        let (a, b) = (plus_of[e.u], minus_of[e.v]);
        let key = (a.min(b), a.max(b));
        match best.get(&key) {
            Some(&(w, _)) if w <= e.w => {}
            _ => {
                best.insert(key, (e.w, (e.u, e.v)));
            }
        }
    }
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let mut arcs: Vec<Option<(usize, usize)>> = Vec::new();
    for v in 0..n {
        if !is_terminal[v] {
            edges.push((plus_of[v], minus_of[v], 0));
            arcs.push(None);
        }
    }
    let mut keyed: Vec<((usize, usize), (i64, (usize, usize)))> = best.into_iter().collect();
    keyed.sort_unstable_by_key(|&(k, _)| k);
    for (key, (w, arc)) in keyed {
        edges.push((key.0, key.1, w));
        arcs.push(Some(arc));
    }
    let graph = Graph::undirected(next, &edges)?;
    // Graph construction preserves edge order, so arc_of_edge lines up.
    let arc_of_edge = arcs;

    let mut parent = vec![None; next];
    let bottom = |v: usize| minus_of[v];
    for v in 0..n {
        let top = plus_of[v];
        parent[top] = forest.parent(v).map(bottom);
        if !is_terminal[v] {
            parent[minus_of[v]] = Some(plus_of[v]);
        }
    }
    let forest = EliminationForest::from_parents(parent)?;
    Ok(APathsReduction {
        graph,
        forest,
        n_original: n,
        plus_of,
        minus_of,
        is_terminal,
        arc_of_edge,
    })
}

impl APathsReduction {
    /// Recover the disjoint terminal paths from a minimum-weight maximum-size
    /// matching of the reduced graph: re-match any half-exposed rung (never
    /// increasing weight, as arc weights are non-negative), read the matched
    /// cross edges as arcs, follow them terminal to terminal, and discard
    /// leftover cycles.
    pub fn extract(&self, g_original: &Graph, matching: &Matching) -> Result<APaths> {
        let mut mate = matching.raw().to_vec();
        let size_before = matching.len();
        for v in 0..self.n_original {
            if self.is_terminal[v] {
                continue;
            }
            let (p, m) = (self.plus_of[v], self.minus_of[v]);
            if mate[p] == UNMATCHED || mate[m] == UNMATCHED {
                if mate[p] != UNMATCHED {
                    let old = mate[p];
                    mate[old] = UNMATCHED;
                }
                if mate[m] != UNMATCHED {
                    let old = mate[m];
                    mate[old] = UNMATCHED;
                }
                mate[p] = m;
                mate[m] = p;
            }
        }
        let repaired = Matching::from_raw(mate);
        debug_assert_eq!(repaired.len(), size_before);

        // Matched cross edges back to arcs of the original graph.
        let mut out_to = vec![UNMATCHED; self.n_original];
        for (a, b) in repaired.edges() {
            let id = self
                .graph
                .find_edge(a, b)
                .ok_or_else(|| Error::contract("matched pair is not a reduced edge"))?;
            if let Some((u, v)) = self.arc_of_edge[id] {
                if u != v {
                    out_to[u] = v;
                }
            }
        }
        let mut paths = Vec::new();
        let mut total: i64 = 0;
        for a in 0..self.n_original {
            if !self.is_terminal[a] || out_to[a] == UNMATCHED {
                continue;
            }
            let mut path = vec![a];
            let mut cur = a;
            loop {
                let nxt = out_to[cur];
                debug_assert_ne!(nxt, UNMATCHED, "interior vertex lacks an out-arc");
                let id = g_original.find_edge(cur, nxt).expect("arc exists");
                total = total.checked_add(g_original.edge(id).w).ok_or(Error::Overflow)?;
                path.push(nxt);
                cur = nxt;
                if self.is_terminal[cur] {
                    break;
                }
            }
            paths.push(path);
        }
        // Remaining arcs form terminal-free cycles; non-negative weights let
        // us drop them.
        Ok(APaths {
            paths,
            total_weight: total,
        })
    }
}

/// Minimum total weight over maximum-cardinality sets of vertex-disjoint
/// terminal-to-terminal paths (no terminal inside a path, no shared
/// vertices). Weights must be non-negative.
pub fn min_weight_disjoint_a_paths(
    g: &Graph,
    terminals: &[usize],
    forest: &EliminationForest,
) -> Result<APaths> {
    let distinct: std::collections::HashSet<usize> = terminals.iter().copied().collect();
    if distinct.len() < 2 {
        return Ok(APaths {
            paths: Vec::new(),
            total_weight: 0,
        });
    }
    let reduction = reduce_disjoint_a_paths(g, terminals, forest)?;
    // Minimum weight at maximum size = maximum weight after negating and
    // shifting.
    let negated: Vec<(usize, usize, i64)> = reduction
        .graph
        .edges()
        .iter()
        .map(|e| (e.u, e.v, -e.w))
        .collect();
    let negated = Graph::undirected(reduction.graph.n(), &negated)?;
    let (shifted, _) = shift_for_max_size(&negated)?;
    let matching = max_weight_matching(&shifted, &reduction.forest)?;
    reduction.extract(g, &matching)
}
