//! 2-hop cover distance oracle: every vertex stores forward and backward
//! (hub, distance) lists; a query scans the two sorted lists for the best
//! common hub. Hubs of a vertex are its forest ancestors (or itself), so
//! labels hold at most 2k entries for a depth-k forest.

use std::io::{Read, Write};

use crate::dijkstra::{DijkstraBuf, Dir};
use crate::error::{Error, Result};
use crate::forest::EliminationForest;
use crate::framework::{self, Problem};
use crate::graph::{Graph, VertexSetView};

/// Hub labels; lists are sorted by hub id after construction. Entries with
/// unreachable hubs are omitted (they can never realize a minimum).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoHopLabels {
    /// `forward[u]`: (hub h, distance u -> h).
    pub forward: Vec<Vec<(usize, i64)>>,
    /// `backward[u]`: (hub h, distance h -> u).
    pub backward: Vec<Vec<(usize, i64)>>,
}

impl TwoHopLabels {
    pub fn n(&self) -> usize {
        self.forward.len()
    }

    /// Exact s-t distance, `None` when no common hub connects them.
    ///
    /// Merge-scan of two sorted lists: O(|forward[s]| + |backward[t]|).
    pub fn query(&self, s: usize, t: usize) -> Result<Option<i64>> {
        if s >= self.n() || t >= self.n() {
            return Err(Error::contract(format!("query ({s}, {t}) out of range")));
        }
        let (a, b) = (&self.forward[s], &self.backward[t]);
        let mut best: Option<i64> = None;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let d = a[i].1.checked_add(b[j].1).ok_or(Error::Overflow)?;
                    if best.map_or(true, |x| d < x) {
                        best = Some(d);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(best)
    }

    /// max over u of |forward[u]| + |backward[u]|.
    pub fn max_label_size(&self) -> usize {
        (0..self.n())
            .map(|u| self.forward[u].len() + self.backward[u].len())
            .max()
            .unwrap_or(0)
    }

    /// Every hub of u must be an ancestor of u (or u itself).
    pub fn check_hub_ancestry(&self, forest: &EliminationForest) -> Result<()> {
        for u in 0..self.n() {
            for &(h, _) in self.forward[u].iter().chain(&self.backward[u]) {
                if !forest.is_ancestor(h, u) {
                    return Err(Error::contract(format!(
                        "hub {h} of vertex {u} is not an ancestor"
                    )));
                }
            }
        }
        Ok(())
    }

    const VERSION: u8 = 1;

    /// Binary snapshot: version byte, vertex count, then per vertex both
    /// lists as a count followed by (hub, distance) pairs.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&[Self::VERSION])?;
        w.write_all(&(self.n() as u64).to_le_bytes())?;
        for u in 0..self.n() {
            for list in [&self.forward[u], &self.backward[u]] {
                w.write_all(&(list.len() as u32).to_le_bytes())?;
                for &(h, d) in list {
                    w.write_all(&(h as u32).to_le_bytes())?;
                    w.write_all(&d.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut byte = [0u8; 1];
        r.read_exact(&mut byte)?;
        if byte[0] != Self::VERSION {
            return Err(Error::input(
                None,
                format!("unsupported label file version {}", byte[0]),
            ));
        }
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        let n = u64::from_le_bytes(b8) as usize;
        let read_list = |r: &mut R| -> Result<Vec<(usize, i64)>> {
            let mut b4 = [0u8; 4];
            r.read_exact(&mut b4)?;
            let cnt = u32::from_le_bytes(b4) as usize;
            let mut list = Vec::with_capacity(cnt);
            for _ in 0..cnt {
                r.read_exact(&mut b4)?;
                let h = u32::from_le_bytes(b4) as usize;
                let mut b8 = [0u8; 8];
                r.read_exact(&mut b8)?;
                list.push((h, i64::from_le_bytes(b8)));
            }
            Ok(list)
        };
        let mut forward = Vec::with_capacity(n);
        let mut backward = Vec::with_capacity(n);
        for _ in 0..n {
            forward.push(read_list(&mut r)?);
            backward.push(read_list(&mut r)?);
        }
        Ok(TwoHopLabels { forward, backward })
    }
}

struct TwoHopProblem {
    forward: Vec<Vec<(usize, i64)>>,
    backward: Vec<Vec<(usize, i64)>>,
    buf: DijkstraBuf,
}

impl Problem for TwoHopProblem {
    type Value = ();

    fn base(&mut self) {}

    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        x: usize,
        _inner: (),
    ) -> Result<()> {
        // Distances to x become forward labels of the reachable vertices.
        self.buf.run(g, view, x, Dir::Reverse, None, None);
        for &u in self.buf.popped() {
            self.forward[u].push((x, self.buf.dist(u).unwrap()));
        }
        // Distances from x become backward labels.
        self.buf.run(g, view, x, Dir::Forward, None, None);
        for &u in self.buf.popped() {
            self.backward[u].push((x, self.buf.dist(u).unwrap()));
        }
        Ok(())
    }

    fn union(&mut self, _g: &Graph, _parts: Vec<(VertexSetView<'_>, ())>) -> Result<()> {
        // Disconnected parts share no hub pairs; the label arrays already
        // hold them side by side.
        Ok(())
    }
}

/// Build a 2-hop cover of `g`. Weights must be non-negative. The maximum
/// label size is at most twice the forest depth.
pub fn build_two_hop(g: &Graph, forest: &EliminationForest) -> Result<TwoHopLabels> {
    g.require_nonnegative()?;
    let mut problem = TwoHopProblem {
        forward: vec![Vec::new(); g.n()],
        backward: vec![Vec::new(); g.n()],
        buf: DijkstraBuf::new(g.n()),
    };
    framework::compute(g, forest, &mut problem)?;
    let mut labels = TwoHopLabels {
        forward: problem.forward,
        backward: problem.backward,
    };
    // Hubs were appended bottom-up (descending preorder time); queries
    // merge-scan on hub id, so normalize the order once here.
    for list in labels.forward.iter_mut().chain(labels.backward.iter_mut()) {
        list.sort_unstable_by_key(|&(h, _)| h);
    }
    debug_assert!(labels.max_label_size() <= 2 * forest.depth());
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;
    use crate::oracles::all_pairs_dijkstra;

    #[test]
    fn directed_star() {
        let g = Graph::directed(3, &[(0, 1, 3), (0, 2, 4)]).unwrap();
        let f = EliminationForest::from_parents(vec![None, Some(0), Some(0)]).unwrap();
        let labels = build_two_hop(&g, &f).unwrap();
        assert_eq!(labels.query(0, 1).unwrap(), Some(3));
        assert_eq!(labels.query(0, 2).unwrap(), Some(4));
        assert_eq!(labels.query(1, 2).unwrap(), None);
        assert!(labels.max_label_size() <= 2 * f.depth());
        labels.check_hub_ancestry(&f).unwrap();
    }

    #[test]
    fn single_vertex() {
        let g = Graph::directed(1, &[]).unwrap();
        let f = dfs_fallback_forest(&g);
        let labels = build_two_hop(&g, &f).unwrap();
        assert_eq!(labels.query(0, 0).unwrap(), Some(0));
        assert_eq!(labels.forward[0], vec![(0, 0)]);
    }

    #[test]
    fn query_range_check() {
        let g = Graph::directed(1, &[]).unwrap();
        let f = dfs_fallback_forest(&g);
        let labels = build_two_hop(&g, &f).unwrap();
        assert!(labels.query(0, 1).is_err());
    }

    #[test]
    fn rejects_negative_weights() {
        let g = Graph::directed(2, &[(0, 1, -1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        assert!(build_two_hop(&g, &f).is_err());
    }

    #[test]
    fn matches_all_pairs_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        for _ in 0..150 {
            let n = rng.gen_range(1..=15);
            let g = crate::gen::random_graph(n, 0.3, 0..=9, true, &mut rng);
            let forest = dfs_fallback_forest(&g);
            let labels = build_two_hop(&g, &forest).unwrap();
            let apsp = all_pairs_dijkstra(&g).unwrap();
            for s in 0..n {
                for t in 0..n {
                    assert_eq!(labels.query(s, t).unwrap(), apsp[s][t]);
                }
            }
            assert!(labels.max_label_size() <= 2 * forest.depth());
            labels.check_hub_ancestry(&forest).unwrap();
        }
    }

    #[test]
    fn snapshot_round_trip() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(56);
        let g = crate::gen::random_graph(12, 0.3, 0..=9, true, &mut rng);
        let f = dfs_fallback_forest(&g);
        let labels = build_two_hop(&g, &f).unwrap();
        let mut bytes = Vec::new();
        labels.write_to(&mut bytes).unwrap();
        let back = TwoHopLabels::read_from(&bytes[..]).unwrap();
        assert_eq!(labels, back);
    }

    /// Reported distances satisfy the triangle inequality on sampled triples.
    #[test]
    fn triangle_inequality_sampled() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(57);
        let g = crate::gen::random_graph(12, 0.4, 0..=9, true, &mut rng);
        let f = dfs_fallback_forest(&g);
        let labels = build_two_hop(&g, &f).unwrap();
        for _ in 0..200 {
            let (a, b, c) = (
                rng.gen_range(0..12),
                rng.gen_range(0..12),
                rng.gen_range(0..12),
            );
            if let (Some(ab), Some(bc)) =
                (labels.query(a, b).unwrap(), labels.query(b, c).unwrap())
            {
                let ac = labels.query(a, c).unwrap().expect("path exists via b");
                assert!(ac <= ab + bc);
            }
        }
    }
}
