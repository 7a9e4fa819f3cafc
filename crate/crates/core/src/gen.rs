//! Random test-instance generators. Seeded deterministically; the
//! `TDSOLVE_SEED` environment variable overrides the default seed so suites
//! are reproducible.

use std::ops::RangeInclusive;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::forest::{EliminationForest, TreeDecomposition};
use crate::graph::Graph;

pub const DEFAULT_SEED: u64 = 0x7d50_17e5;

/// RNG seeded from `TDSOLVE_SEED` when set, else from the default seed.
pub fn seeded_rng() -> ChaCha8Rng {
    let seed = std::env::var("TDSOLVE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi-style simple graph with integer weights drawn uniformly from
/// `weights`. For directed graphs each ordered pair is sampled independently.
pub fn random_graph(
    n: usize,
    p: f64,
    weights: RangeInclusive<i64>,
    directed: bool,
    rng: &mut impl Rng,
) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && u > v) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(weights.clone())));
            }
        }
    }
    let g = if directed {
        Graph::directed(n, &edges)
    } else {
        Graph::undirected(n, &edges)
    };
    g.expect("generated edges are simple by construction")
}

/// A random partial 2-tree together with a width-2 tree decomposition.
///
/// Built by growing a 2-tree (each new vertex attached to both endpoints of
/// an existing edge), then keeping each edge with probability `keep`. The
/// decomposition keeps one bag per grown vertex and stays valid for the
/// subgraph.
pub fn random_partial_two_tree(
    n: usize,
    keep: f64,
    rng: &mut impl Rng,
) -> (Graph, TreeDecomposition) {
    assert!(n >= 2);
    let mut skeleton: Vec<(usize, usize)> = vec![(0, 1)];
    // bag 0 = {0, 1}; bag of vertex v >= 2 is {a, b, v} for the host edge.
    let mut bags: Vec<Vec<usize>> = vec![vec![0, 1]];
    let mut tree: Vec<(usize, usize)> = Vec::new();
    // Which bag introduced each skeleton edge, to attach new bags correctly.
    let mut edge_bag: std::collections::HashMap<(usize, usize), usize> = Default::default();
    edge_bag.insert((0, 1), 0);
    for v in 2..n {
        let &(a, b) = &skeleton[rng.gen_range(0..skeleton.len())];
        let host = edge_bag[&(a.min(b), b.max(a))];
        let bag = bags.len();
        bags.push(vec![a, b, v]);
        tree.push((host, bag));
        for &(x, y) in &[(a, v), (b, v)] {
            skeleton.push((x, y));
            edge_bag.insert((x.min(y), x.max(y)), bag);
        }
    }
    let mut edges = Vec::new();
    for &(u, v) in &skeleton {
        if rng.gen_bool(keep) {
            edges.push((u, v, rng.gen_range(0..=9)));
        }
    }
    let g = Graph::undirected(n, &edges).unwrap();
    (g, TreeDecomposition { bags, tree })
}

/// A complete binary tree on `n = 2^levels - 1` vertices plus `extra` edges
/// from each vertex to uniformly random strict ancestors, so the tree itself
/// is a valid elimination forest of depth `levels`.
pub fn binary_tree_with_ancestor_edges(
    levels: u32,
    extra: usize,
    weights: RangeInclusive<i64>,
    directed: bool,
    rng: &mut impl Rng,
) -> (Graph, EliminationForest) {
    let n = (1usize << levels) - 1;
    let mut parent = vec![None; n];
    let mut edges = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = Default::default();
    for v in 1..n {
        let p = (v - 1) / 2;
        parent[v] = Some(p);
        edges.push((p, v, rng.gen_range(weights.clone())));
        seen.insert((p, v));
    }
    for v in 1..n {
        // Collect the strict ancestors of v.
        let mut anc = Vec::new();
        let mut a = (v - 1) / 2;
        loop {
            anc.push(a);
            if a == 0 {
                break;
            }
            a = (a - 1) / 2;
        }
        for _ in 0..extra {
            let a = anc[rng.gen_range(0..anc.len())];
            let (x, y) = if directed && rng.gen_bool(0.5) {
                (v, a)
            } else {
                (a, v)
            };
            let key = if directed { (x, y) } else { (x.min(y), x.max(y)) };
            if seen.insert(key) {
                edges.push((x, y, rng.gen_range(weights.clone())));
            }
        }
    }
    let g = if directed {
        Graph::directed(n, &edges).unwrap()
    } else {
        Graph::undirected(n, &edges).unwrap()
    };
    let forest = EliminationForest::from_parents(parent).unwrap();
    (g, forest)
}
