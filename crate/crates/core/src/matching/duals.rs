//! Dual certificates for weighted matching: per-vertex values y, a laminar
//! family Ω of odd vertex sets with non-negative values z, and the three
//! complementary-slackness conditions tying them to a matching:
//!
//! 1. y(u) + y(v) + Σ { z(B) : u, v ∈ B } >= w(uv) on every edge,
//! 2. with equality on matched edges,
//! 3. every B ∈ Ω contains exactly ⌊|B|/2⌋ matched edges.
//!
//! All y and z values are stored doubled (`y2`, `z2`), so the half-integral
//! dual adjustments of the blossom search stay exact integers. The laminar
//! family is an explicit forest of blossom nodes carrying their odd cycles,
//! which the search needs for augmenting through and expanding old blossoms.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSetView};
use crate::matching::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    Vertex(usize),
    Blossom(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Blossom {
    /// Cycle order; `children[0]` contains the base vertex.
    pub children: Vec<Node>,
    /// `cycle[i]` joins `children[i]` and `children[i+1 mod len]`, stored as
    /// (vertex inside children[i], vertex inside children[i+1]). Odd
    /// positions are the matched cycle edges.
    pub cycle: Vec<(usize, usize)>,
    pub base: usize,
    pub z2: i64,
    pub parent: Option<usize>,
    pub alive: bool,
}

/// Matching duals (Ω, y, z) with y and z doubled into integers.
#[derive(Debug, Clone)]
pub struct MatchingDuals {
    pub(crate) y2: Vec<i64>,
    pub(crate) arena: Vec<Blossom>,
    /// Innermost alive blossom containing each vertex, if any.
    pub(crate) vertex_blossom: Vec<Option<usize>>,
}

impl MatchingDuals {
    /// Empty Ω, y ≡ 0.
    pub fn new(n: usize) -> Self {
        MatchingDuals {
            y2: vec![0; n],
            arena: Vec::new(),
            vertex_blossom: vec![None; n],
        }
    }

    /// Empty Ω with the given (unscaled) y values.
    pub fn from_y(y: &[i64]) -> Self {
        MatchingDuals {
            y2: y.iter().map(|&v| 2 * v).collect(),
            arena: Vec::new(),
            vertex_blossom: vec![None; y.len()],
        }
    }

    /// Per-vertex duals, doubled.
    pub fn y2(&self) -> &[i64] {
        &self.y2
    }

    /// The sets of Ω with their doubled z values, members sorted.
    pub fn omega(&self) -> Vec<(Vec<usize>, i64)> {
        self.arena
            .iter()
            .enumerate()
            .filter(|(_, b)| b.alive)
            .map(|(id, b)| {
                let mut members = self.members(id);
                members.sort_unstable();
                (members, b.z2)
            })
            .collect()
    }

    pub(crate) fn members(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(id) = stack.pop() {
            for child in &self.arena[id].children {
                match *child {
                    Node::Vertex(v) => out.push(v),
                    Node::Blossom(c) => stack.push(c),
                }
            }
        }
        out
    }

    /// Alive blossoms with no alive parent.
    pub(crate) fn alive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.arena
            .iter()
            .enumerate()
            .filter(|(_, b)| b.alive && b.parent.is_none())
            .map(|(id, _)| id)
    }

    /// Allocate a new top-level blossom; reparents children and reroutes the
    /// innermost pointers of its direct vertex children.
    pub(crate) fn new_blossom(
        &mut self,
        children: Vec<Node>,
        cycle: Vec<(usize, usize)>,
        base: usize,
    ) -> usize {
        debug_assert_eq!(children.len() % 2, 1);
        debug_assert_eq!(children.len(), cycle.len());
        let id = self.arena.len();
        for child in &children {
            match *child {
                Node::Vertex(v) => self.vertex_blossom[v] = Some(id),
                Node::Blossom(c) => self.arena[c].parent = Some(id),
            }
        }
        self.arena.push(Blossom {
            children,
            cycle,
            base,
            z2: 0,
            parent: None,
            alive: true,
        });
        id
    }

    /// Dissolve a top-level blossom: its children become top-level.
    pub(crate) fn expand(&mut self, b: usize) {
        debug_assert!(self.arena[b].alive && self.arena[b].parent.is_none());
        self.arena[b].alive = false;
        let children = self.arena[b].children.clone();
        for child in children {
            match child {
                Node::Vertex(v) => self.vertex_blossom[v] = None,
                Node::Blossom(c) => self.arena[c].parent = None,
            }
        }
    }

    /// The direct child of `b` whose subtree contains `v`.
    pub(crate) fn child_containing(&self, b: usize, v: usize) -> Node {
        match self.vertex_blossom[v] {
            Some(inner) if inner == b => Node::Vertex(v),
            Some(inner) => {
                let mut c = inner;
                while self.arena[c].parent != Some(b) {
                    c = self.arena[c].parent.expect("v not inside blossom b");
                }
                Node::Blossom(c)
            }
            None => Node::Vertex(v), // only valid when Vertex(v) is a direct child
        }
    }

    /// Rearrange the matching inside `node` so that `v` becomes its base
    /// (the one vertex not matched within it). Cycle edges are rematched and
    /// sub-blossoms rotated recursively; `mate` is updated in place.
    pub(crate) fn rematch_to(&mut self, node: Node, v: usize, mate: &mut [usize]) {
        let b = match node {
            Node::Vertex(u) => {
                debug_assert_eq!(u, v);
                return;
            }
            Node::Blossom(b) => b,
        };
        let k = {
            let child = self.child_containing(b, v);
            self.arena[b]
                .children
                .iter()
                .position(|c| *c == child)
                .expect("child present")
        };
        self.arena[b].children.rotate_left(k);
        self.arena[b].cycle.rotate_left(k);
        self.arena[b].base = v;
        let len = self.arena[b].children.len();
        for i in (1..len).step_by(2) {
            let (p, q) = self.arena[b].cycle[i];
            mate[p] = q;
            mate[q] = p;
            let (ci, cj) = (self.arena[b].children[i], self.arena[b].children[i + 1]);
            self.rematch_to(ci, p, mate);
            self.rematch_to(cj, q, mate);
        }
        let c0 = self.arena[b].children[0];
        self.rematch_to(c0, v, mate);
    }

    /// Sum of z2 over alive blossoms containing both u and v.
    pub(crate) fn z2_common(&self, u: usize, v: usize) -> i64 {
        // Walk u's chain of containing blossoms, mark, then walk v's chain.
        let mut on_u = Vec::new();
        let mut c = self.vertex_blossom[u];
        while let Some(b) = c {
            on_u.push(b);
            c = self.arena[b].parent;
        }
        let mut sum = 0;
        let mut c = self.vertex_blossom[v];
        while let Some(b) = c {
            if on_u.contains(&b) && self.arena[b].alive {
                sum += self.arena[b].z2;
            }
            c = self.arena[b].parent;
        }
        sum
    }

    /// Doubled value of y(u) + y(v) + Σ z(B) over common sets, vs 2 w(uv).
    pub fn slack2(&self, g: &Graph, edge_id: usize) -> Result<i64> {
        let e = g.edge(edge_id);
        self.y2[e.u]
            .checked_add(self.y2[e.v])
            .and_then(|x| x.checked_add(self.z2_common(e.u, e.v)))
            .and_then(|x| x.checked_sub(2 * e.w))
            .ok_or(Error::Overflow)
    }
}

/// First violated dual condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualViolation {
    /// Two Ω sets that neither nest nor are disjoint.
    NotLaminar(Vec<usize>, Vec<usize>),
    /// An Ω set of even size.
    EvenSet(Vec<usize>),
    /// z(B) < 0.
    NegativeZ(Vec<usize>, i64),
    /// An Ω set with a member outside the view.
    OutsideView(Vec<usize>, usize),
    /// Condition 1: covering fails on this edge (doubled slack given).
    Covering(usize, usize, i64),
    /// Condition 2: a matched edge that is not tight (doubled slack given).
    NotTight(usize, usize, i64),
    /// Condition 3: wrong number of matched edges inside the set.
    SetMatching(Vec<usize>, usize, usize),
}

impl std::fmt::Display for DualViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DualViolation::NotLaminar(a, b) => write!(f, "sets {a:?} and {b:?} cross"),
            DualViolation::EvenSet(s) => write!(f, "set {s:?} has even size"),
            DualViolation::NegativeZ(s, z) => write!(f, "set {s:?} has z2 = {z} < 0"),
            DualViolation::OutsideView(s, v) => {
                write!(f, "set {s:?} contains {v} outside the view")
            }
            DualViolation::Covering(u, v, s) => {
                write!(f, "condition (1) fails on edge ({u}, {v}): slack2 = {s}")
            }
            DualViolation::NotTight(u, v, s) => {
                write!(f, "condition (2) fails on matched edge ({u}, {v}): slack2 = {s}")
            }
            DualViolation::SetMatching(s, have, want) => {
                write!(f, "condition (3) fails on {s:?}: {have} matched edges, want {want}")
            }
        }
    }
}

/// Check laminarity, z >= 0, and conditions (1)-(3) of `d` against the
/// matching `m` on the subgraph induced by `view`. Returns the first
/// violation found.
pub fn check_duals(
    g: &Graph,
    view: &VertexSetView<'_>,
    m: &Matching,
    d: &MatchingDuals,
) -> std::result::Result<(), DualViolation> {
    // Sets entirely outside the view belong to other parts and are ignored;
    // a set straddling the view boundary is a violation.
    let omega: Vec<(Vec<usize>, i64)> = d
        .omega()
        .into_iter()
        .filter(|(members, _)| members.iter().any(|&v| view.contains(v)))
        .collect();
    // Structural constraints on Ω.
    for (members, z2) in &omega {
        if members.len() % 2 == 0 {
            return Err(DualViolation::EvenSet(members.clone()));
        }
        if *z2 < 0 {
            return Err(DualViolation::NegativeZ(members.clone(), *z2));
        }
        if let Some(&v) = members.iter().find(|&&v| !view.contains(v)) {
            return Err(DualViolation::OutsideView(members.clone(), v));
        }
    }
    for i in 0..omega.len() {
        for j in i + 1..omega.len() {
            let (a, b) = (&omega[i].0, &omega[j].0);
            let common = a.iter().filter(|v| b.binary_search(v).is_ok()).count();
            if common != 0 && common != a.len() && common != b.len() {
                return Err(DualViolation::NotLaminar(a.clone(), b.clone()));
            }
        }
    }
    // Conditions (1) and (2) edge by edge.
    for (id, e) in g.edges().iter().enumerate() {
        if !view.contains(e.u) || !view.contains(e.v) {
            continue;
        }
        let slack = d.slack2(g, id).expect("dual arithmetic overflow");
        if slack < 0 {
            return Err(DualViolation::Covering(e.u, e.v, slack));
        }
        if m.mate(e.u) == Some(e.v) && slack != 0 {
            return Err(DualViolation::NotTight(e.u, e.v, slack));
        }
    }
    // Condition (3) set by set.
    for (members, _) in &omega {
        let inside = members
            .iter()
            .filter(|&&v| {
                m.mate(v)
                    .map_or(false, |u| u > v && members.binary_search(&u).is_ok())
            })
            .count();
        let want = members.len() / 2;
        if inside != want {
            return Err(DualViolation::SetMatching(members.clone(), inside, want));
        }
    }
    Ok(())
}

/// [`check_duals`] as a crate error for precondition checks.
pub fn require_valid_duals(
    g: &Graph,
    view: &VertexSetView<'_>,
    m: &Matching,
    d: &MatchingDuals,
) -> Result<()> {
    check_duals(g, view, m, d).map_err(|v| Error::contract(format!("invalid duals: {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;
    use crate::matching::UNMATCHED;

    #[test]
    fn tight_single_edge() {
        let g = Graph::undirected(2, &[(0, 1, 4)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let m = Matching::from_edges(2, &[(0, 1)]).unwrap();
        let d = MatchingDuals::from_y(&[2, 2]);
        assert!(check_duals(&g, &f.full_view(), &m, &d).is_ok());
    }

    #[test]
    fn covering_violation() {
        let g = Graph::undirected(2, &[(0, 1, 4)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let m = Matching::from_edges(2, &[(0, 1)]).unwrap();
        let d = MatchingDuals::from_y(&[1, 1]);
        match check_duals(&g, &f.full_view(), &m, &d) {
            Err(DualViolation::Covering(0, 1, s)) => assert!(s < 0),
            other => panic!("expected covering violation, got {other:?}"),
        }
    }

    #[test]
    fn triangle_with_blossom_set() {
        // Triangle, w ≡ 2, m = {01}, Ω = {{0,1,2}} with z = 2, y ≡ 0:
        // every edge has slack 0 via the set, and the set holds 1 = ⌊3/2⌋
        // matched edge.
        let g = Graph::undirected(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let m = Matching::from_edges(3, &[(0, 1)]).unwrap();
        let mut d = MatchingDuals::new(3);
        let b = d.new_blossom(
            vec![Node::Vertex(0), Node::Vertex(1), Node::Vertex(2)],
            vec![(0, 1), (1, 2), (2, 0)],
            0,
        );
        d.arena[b].z2 = 4; // z = 2 doubled
        assert!(check_duals(&g, &f.full_view(), &m, &d).is_ok());

        // Dropping the matched edge breaks condition (3).
        let empty = Matching::new(3);
        assert!(matches!(
            check_duals(&g, &f.full_view(), &empty, &d),
            Err(DualViolation::SetMatching(_, 0, 1))
        ));
    }

    #[test]
    fn rematch_to_rotates_cycle() {
        // One blossom over a triangle: rotating the base rematches the cycle.
        let g = Graph::undirected(3, &[(0, 1, 0), (1, 2, 0), (0, 2, 0)]).unwrap();
        let mut d = MatchingDuals::new(3);
        d.new_blossom(
            vec![Node::Vertex(0), Node::Vertex(1), Node::Vertex(2)],
            vec![(0, 1), (1, 2), (2, 0)],
            0,
        );
        let mut mate = vec![UNMATCHED; 3];
        mate[1] = 2;
        mate[2] = 1;
        d.rematch_to(Node::Blossom(0), 2, &mut mate);
        // Now 2 is the base: 0 and 1 are matched to each other, and mate[2]
        // is left for the caller to pair outside the blossom.
        assert_eq!(mate[0], 1);
        assert_eq!(mate[1], 0);
        assert_eq!(d.arena[0].base, 2);
        let _ = g;
    }
}
