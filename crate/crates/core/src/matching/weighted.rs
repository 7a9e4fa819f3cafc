//! Maximum-weight perfect matching via a primal-dual blossom search that
//! keeps the dual certificate (Ω, y, z) valid at every step.
//!
//! One `weighted_augment` call grows an alternating tree of tight edges from
//! each exposed vertex in turn: dual adjustments by the minimum slack create
//! new tight edges, tight odd cycles are shrunk into blossoms, and inner
//! blossoms whose z reaches 0 are expanded. The call either augments the
//! matching by one edge or certifies it maximum-size, leaving the conditions
//! intact either way.
//!
//! Growing one tree at a time keeps all arithmetic integral: within a tree,
//! tight edges force all (doubled) y values to share the root's parity, so
//! outer-outer slacks are even and halved adjustments stay whole. Trees from
//! several exposed roots at once would mix parities.
//!
//! The solver applies the forest recursion: the new subtree root x joins with
//! y(x) just large enough to keep its edges covered, followed by one
//! augmentation attempt.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::forest::EliminationForest;
use crate::framework::{self, Problem};
use crate::graph::{Graph, VertexSetView};
use crate::matching::duals::{check_duals, require_valid_duals, MatchingDuals, Node};
use crate::matching::{Matching, UNMATCHED};

#[derive(Debug, Clone)]
pub enum WeightedAugmentOutcome {
    /// A matching one edge larger, with duals still satisfying the
    /// conditions.
    Augmented(Matching, MatchingDuals),
    /// The matching is maximum-size on the view; duals (possibly adjusted)
    /// still satisfy the conditions. When the matching is not perfect this
    /// says nothing about its weight among equal-size matchings.
    Maximum(MatchingDuals),
}

/// One augmentation attempt under valid duals.
pub fn weighted_augment(
    g: &Graph,
    view: &VertexSetView<'_>,
    m: &Matching,
    d: &MatchingDuals,
) -> Result<WeightedAugmentOutcome> {
    if g.is_directed() {
        return Err(Error::contract("weighted matching requires an undirected graph"));
    }
    m.validate_on(g, view)?;
    require_valid_duals(g, view, m, d)?;
    let mut mate = m.raw().to_vec();
    let mut duals = d.clone();
    let mut search = WeightedSearch::new(g.n());
    if search.augment_once(g, view, &mut mate, &mut duals)? {
        Ok(WeightedAugmentOutcome::Augmented(
            Matching::from_raw(mate),
            duals,
        ))
    } else {
        Ok(WeightedAugmentOutcome::Maximum(duals))
    }
}

/// Maximum-weight perfect matching of `g` with its dual certificate.
/// Fails with [`Error::NoPerfectMatching`] when none exists.
pub fn max_weight_perfect_matching(
    g: &Graph,
    forest: &EliminationForest,
) -> Result<(Matching, MatchingDuals)> {
    mwpm(g, forest, false)
}

/// As [`max_weight_perfect_matching`], additionally re-checking the dual
/// conditions after every incremental step.
pub fn max_weight_perfect_matching_checked(
    g: &Graph,
    forest: &EliminationForest,
) -> Result<(Matching, MatchingDuals)> {
    mwpm(g, forest, true)
}

fn mwpm(
    g: &Graph,
    forest: &EliminationForest,
    instrument: bool,
) -> Result<(Matching, MatchingDuals)> {
    if g.is_directed() {
        return Err(Error::contract("weighted matching requires an undirected graph"));
    }
    let mut problem = MwpmProblem {
        mate: vec![UNMATCHED; g.n()],
        duals: MatchingDuals::new(g.n()),
        search: WeightedSearch::new(g.n()),
        instrument,
    };
    framework::compute(g, forest, &mut problem)?;
    let matching = Matching::from_raw(problem.mate);
    if matching.len() * 2 != g.n() {
        return Err(Error::NoPerfectMatching {
            best: Box::new(matching),
        });
    }
    debug_assert!(check_duals(g, &forest.full_view(), &matching, &problem.duals).is_ok());
    Ok((matching, problem.duals))
}

struct MwpmProblem {
    mate: Vec<usize>,
    duals: MatchingDuals,
    search: WeightedSearch,
    instrument: bool,
}

impl Problem for MwpmProblem {
    type Value = ();

    fn base(&mut self) {}

    fn increment(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        x: usize,
        _inner: (),
    ) -> Result<()> {
        // y(x) just large enough that every new edge is covered; 0 floors it
        // so isolated vertices join neutrally.
        let mut y2x: i64 = 0;
        for (id, u) in view.edges_from(g, x) {
            let e = g.edge(id);
            let need = (2 * e.w)
                .checked_sub(self.duals.y2[u])
                .ok_or(Error::Overflow)?;
            y2x = y2x.max(need);
        }
        self.duals.y2[x] = y2x;
        self.search
            .augment_once(g, view, &mut self.mate, &mut self.duals)?;
        if self.instrument {
            let snapshot = Matching::from_raw(self.mate.clone());
            check_duals(g, view, &snapshot, &self.duals)
                .map_err(|v| Error::contract(format!("duals broken after increment: {v}")))?;
        }
        Ok(())
    }

    fn union(&mut self, _g: &Graph, _parts: Vec<(VertexSetView<'_>, ())>) -> Result<()> {
        // Matchings and dual structures of disjoint parts already live side
        // by side in the shared arrays.
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    Free,
    Outer,
    Inner,
}

/// Scratch state for the search. Top nodes (a vertex, or a maximal alive
/// blossom) are indexed as `v` for vertices and `n + b` for blossoms; labels
/// are stamp-invalidated between root searches.
struct WeightedSearch {
    n: usize,
    top_of: Vec<usize>,
    label: Vec<Label>,
    label_stamp: Vec<u32>,
    parent_edge: Vec<(usize, usize)>,
    labeled: Vec<usize>,
    path_mark: Vec<u32>,
    stamp: u32,
    mark_stamp: u32,
    queue: VecDeque<usize>,
}

impl WeightedSearch {
    fn new(n: usize) -> Self {
        WeightedSearch {
            n,
            top_of: (0..n).collect(),
            label: vec![Label::Free; 2 * n],
            label_stamp: vec![0; 2 * n],
            parent_edge: vec![(UNMATCHED, UNMATCHED); 2 * n],
            labeled: Vec::new(),
            path_mark: vec![0; 2 * n],
            stamp: 0,
            mark_stamp: 0,
            queue: VecDeque::new(),
        }
    }

    fn ensure_capacity(&mut self, top_id: usize) {
        if top_id >= self.label.len() {
            let len = top_id + 1;
            self.label.resize(len, Label::Free);
            self.label_stamp.resize(len, 0);
            self.parent_edge.resize(len, (UNMATCHED, UNMATCHED));
            self.path_mark.resize(len, 0);
        }
    }

    fn get_label(&self, t: usize) -> Label {
        if self.label_stamp[t] == self.stamp {
            self.label[t]
        } else {
            Label::Free
        }
    }

    fn set_label(&mut self, t: usize, l: Label) {
        self.ensure_capacity(t);
        self.label[t] = l;
        self.label_stamp[t] = self.stamp;
        self.labeled.push(t);
    }

    fn base_of_top(&self, t: usize, duals: &MatchingDuals) -> usize {
        if t < self.n {
            t
        } else {
            duals.arena[t - self.n].base
        }
    }

    fn vertices_of_top(&self, t: usize, duals: &MatchingDuals) -> Vec<usize> {
        if t < self.n {
            vec![t]
        } else {
            duals.members(t - self.n)
        }
    }

    /// True iff `t` currently denotes a maximal node.
    fn is_current_top(&self, t: usize, duals: &MatchingDuals) -> bool {
        if t < self.n {
            self.top_of[t] == t
        } else {
            let b = &duals.arena[t - self.n];
            b.alive && b.parent.is_none()
        }
    }

    /// One augmentation attempt: try each exposed vertex as a tree root.
    /// Finishes by dissolving blossoms whose z returned to 0.
    fn augment_once(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        mate: &mut [usize],
        duals: &mut MatchingDuals,
    ) -> Result<bool> {
        for v in view.vertices() {
            self.top_of[v] = v;
        }
        let roots: Vec<usize> = duals.alive_roots().collect();
        for b in roots {
            if view.contains(duals.arena[b].base) {
                self.ensure_capacity(self.n + b);
                for v in duals.members(b) {
                    self.top_of[v] = self.n + b;
                }
            }
        }
        let mut exposed: Vec<usize> =
            view.vertices().filter(|&v| mate[v] == UNMATCHED).collect();
        exposed.sort_unstable();

        let mut augmented = false;
        for &r in &exposed {
            if self.search_from(g, view, r, mate, duals)? {
                augmented = true;
                break;
            }
        }

        // Sets with z = 0 contribute nothing and need not stay contracted.
        loop {
            let expandable: Vec<usize> = duals
                .alive_roots()
                .filter(|&b| duals.arena[b].z2 == 0 && view.contains(duals.arena[b].base))
                .collect();
            if expandable.is_empty() {
                break;
            }
            for b in expandable {
                duals.expand(b);
            }
        }
        Ok(augmented)
    }

    /// Grow one alternating tree of tight edges from the exposed vertex `r`.
    /// Returns true on augmentation, false when the tree is hungarian
    /// (no candidate edges at any slack: no augmenting path from r exists).
    fn search_from(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        r: usize,
        mate: &mut [usize],
        duals: &mut MatchingDuals,
    ) -> Result<bool> {
        self.stamp += 1;
        self.labeled.clear();
        self.queue.clear();
        let rt = self.top_of[r];
        self.set_label(rt, Label::Outer);
        for v in self.vertices_of_top(rt, duals) {
            self.queue.push_back(v);
        }

        loop {
            // Scan phase: follow tight edges.
            while let Some(v) = self.queue.pop_front() {
                if self.get_label(self.top_of[v]) != Label::Outer {
                    continue;
                }
                let incident: Vec<(usize, usize)> = view.edges_from(g, v).collect();
                for (id, to) in incident {
                    let (tv, tt) = (self.top_of[v], self.top_of[to]);
                    if tv == tt {
                        continue;
                    }
                    let slack = duals.slack2(g, id)?;
                    debug_assert!(slack >= 0, "covering violated during search");
                    if slack != 0 {
                        continue;
                    }
                    match self.get_label(tt) {
                        Label::Free => {
                            let b = self.base_of_top(tt, duals);
                            if mate[b] == UNMATCHED {
                                self.augment(v, to, mate, duals);
                                return Ok(true);
                            }
                            self.set_label(tt, Label::Inner);
                            self.parent_edge[tt] = (v, to);
                            let mt = self.top_of[mate[b]];
                            self.set_label(mt, Label::Outer);
                            for u in self.vertices_of_top(mt, duals) {
                                self.queue.push_back(u);
                            }
                        }
                        Label::Outer => {
                            self.contract(v, to, mate, duals);
                        }
                        Label::Inner => {}
                    }
                }
            }

            // Dual phase.
            let delta = self.compute_delta(g, view, duals)?;
            let delta = match delta {
                None => return Ok(false), // hungarian tree; r stays exposed
                Some(d) => d,
            };
            if delta == 0 {
                let mut dump = String::new();
                for v in view.vertices() {
                    dump.push_str(&format!(
                        "v{} top {} label {:?} y2 {} mate {:?}\n",
                        v,
                        self.top_of[v],
                        self.get_label(self.top_of[v]),
                        duals.y2[v],
                        if mate[v] == UNMATCHED { None } else { Some(mate[v]) },
                    ));
                }
                for (i, b) in duals.arena.iter().enumerate() {
                    dump.push_str(&format!("B{i}: {:?}\n", b));
                }
                panic!("zero dual adjustment would loop; state:\n{dump}");
            }
            self.apply_delta(view, duals, delta);
            self.expand_zero_inner(view, duals);
            for v in view.vertices() {
                if self.get_label(self.top_of[v]) == Label::Outer {
                    self.queue.push_back(v);
                }
            }
        }
    }

    /// Minimum slack over candidate events: outer-free edges, halved
    /// outer-outer edges, and halved z of inner blossoms. `None` = no
    /// candidates at all.
    fn compute_delta(
        &mut self,
        g: &Graph,
        view: &VertexSetView<'_>,
        duals: &MatchingDuals,
    ) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        let mut take = |v: i64| {
            if best.map_or(true, |b| v < b) {
                best = Some(v);
            }
        };
        for u in view.vertices() {
            if self.get_label(self.top_of[u]) != Label::Outer {
                continue;
            }
            for (id, w) in view.edges_from(g, u) {
                let tw = self.top_of[w];
                if tw == self.top_of[u] {
                    continue;
                }
                let slack = duals.slack2(g, id)?;
                match self.get_label(tw) {
                    Label::Free => take(slack),
                    Label::Outer => {
                        debug_assert_eq!(slack % 2, 0, "odd outer-outer slack");
                        take(slack / 2);
                    }
                    Label::Inner => {}
                }
            }
        }
        for idx in 0..self.labeled.len() {
            let t = self.labeled[idx];
            if t >= self.n
                && self.is_current_top(t, duals)
                && self.get_label(t) == Label::Inner
            {
                let z2 = duals.arena[t - self.n].z2;
                debug_assert_eq!(z2 % 2, 0);
                take(z2 / 2);
            }
        }
        Ok(best)
    }

    fn apply_delta(&mut self, view: &VertexSetView<'_>, duals: &mut MatchingDuals, delta: i64) {
        for v in view.vertices() {
            match self.get_label(self.top_of[v]) {
                Label::Outer => duals.y2[v] -= delta,
                Label::Inner => duals.y2[v] += delta,
                Label::Free => {}
            }
        }
        for idx in 0..self.labeled.len() {
            let t = self.labeled[idx];
            if t >= self.n && self.is_current_top(t, duals) {
                match self.get_label(t) {
                    Label::Outer => duals.arena[t - self.n].z2 += 2 * delta,
                    Label::Inner => duals.arena[t - self.n].z2 -= 2 * delta,
                    Label::Free => {}
                }
            }
        }
    }

    /// Expand every inner top blossom whose z reached 0, relabeling the
    /// children on the alternating path through it.
    fn expand_zero_inner(&mut self, view: &VertexSetView<'_>, duals: &mut MatchingDuals) {
        loop {
            let target = duals.alive_roots().find(|&b| {
                duals.arena[b].z2 == 0
                    && view.contains(duals.arena[b].base)
                    && self.is_current_top(self.n + b, duals)
                    && self.get_label(self.n + b) == Label::Inner
            });
            let b = match target {
                Some(b) => b,
                None => return,
            };
            let t_id = self.n + b;
            let (p_entry, q_entry) = self.parent_edge[t_id];
            let entry_child = duals.child_containing(b, q_entry);
            duals.expand(b);
            let children = duals.arena[b].children.clone();
            let cycle = duals.arena[b].cycle.clone();
            for child in &children {
                let ct = self.top_id(*child);
                self.ensure_capacity(ct);
                for m in self.vertices_of_top(ct, duals) {
                    self.top_of[m] = ct;
                }
            }
            let len = children.len();
            let k = children.iter().position(|c| *c == entry_child).unwrap();
            // Walk from the entry child to the base child (index 0) along the
            // side that starts with the matched cycle edge, alternating
            // inner/outer labels; the other side stays free.
            let mut pos = k;
            let mut step = 0usize;
            loop {
                let ct = self.top_id(children[pos]);
                if step % 2 == 0 {
                    self.set_label(ct, Label::Inner);
                    if step == 0 {
                        self.parent_edge[ct] = (p_entry, q_entry);
                    }
                } else {
                    self.set_label(ct, Label::Outer);
                    for m in self.vertices_of_top(ct, duals) {
                        self.queue.push_back(m);
                    }
                }
                if pos == 0 {
                    break;
                }
                if k % 2 == 0 {
                    // Decreasing direction: edge cycle[pos - 1] leads down.
                    let next = pos - 1;
                    if step % 2 == 1 {
                        // outer -> inner via the unmatched edge
                        let (a, bb) = cycle[next];
                        let nt = self.top_id(children[next]);
                        self.ensure_capacity(nt);
                        self.parent_edge[nt] = (bb, a);
                    }
                    pos = next;
                } else {
                    // Increasing direction: edge cycle[pos] leads on.
                    let next = (pos + 1) % len;
                    if step % 2 == 1 {
                        let (a, bb) = cycle[pos];
                        let nt = self.top_id(children[next]);
                        self.ensure_capacity(nt);
                        self.parent_edge[nt] = (a, bb);
                    }
                    pos = next;
                }
                step += 1;
            }
        }
    }

    fn top_id(&self, node: Node) -> usize {
        match node {
            Node::Vertex(v) => v,
            Node::Blossom(b) => self.n + b,
        }
    }

    /// Tree parent of an outer node, as (inner parent top, grandparent top),
    /// or `None` at the root.
    fn outer_parent(
        &self,
        t: usize,
        mate: &[usize],
        duals: &MatchingDuals,
    ) -> Option<(usize, usize)> {
        let b = self.base_of_top(t, duals);
        if mate[b] == UNMATCHED {
            return None;
        }
        let inner = self.top_of[mate[b]];
        let (p, _) = self.parent_edge[inner];
        Some((inner, self.top_of[p]))
    }

    /// Shrink the odd cycle formed by the tight edge (v, to) between two
    /// outer nodes of the same tree into a new outer blossom with z = 0.
    fn contract(&mut self, v: usize, to: usize, mate: &[usize], duals: &mut MatchingDuals) {
        // Mark the outer nodes on v's root path, then walk from `to` to the
        // first marked outer node: the least common ancestor.
        self.mark_stamp += 1;
        let mut t = self.top_of[v];
        loop {
            self.path_mark[t] = self.mark_stamp;
            match self.outer_parent(t, mate, duals) {
                Some((_, g)) => t = g,
                None => break,
            }
        }
        let mut lca = self.top_of[to];
        while self.path_mark[lca] != self.mark_stamp {
            let (_, g) = self
                .outer_parent(lca, mate, duals)
                .expect("nodes share a tree");
            lca = g;
        }

        // Alternating top-node paths [outer, inner, outer, ...] up to lca.
        let collect = |s: &Self, from: usize| -> Vec<usize> {
            let mut path = vec![from];
            let mut t = from;
            while t != lca {
                let (inner, g) = s.outer_parent(t, mate, duals).expect("path reaches lca");
                path.push(inner);
                path.push(g);
                t = g;
            }
            path
        };
        let path_v = collect(self, self.top_of[v]);
        let path_w = collect(self, self.top_of[to]);

        // Children in cycle order starting at lca, going down the v side,
        // across (v, to), and back up the w side; cycle[i] joins child i and
        // i + 1, odd positions matched.
        let node_of = |s: &Self, t: usize| -> Node {
            if t < s.n {
                Node::Vertex(t)
            } else {
                Node::Blossom(t - s.n)
            }
        };
        let mut children = vec![node_of(self, lca)];
        let mut cycle: Vec<(usize, usize)> = Vec::new();
        let s_len = path_v.len() - 1;
        for j in (0..s_len).rev() {
            let cur = path_v[j];
            if j % 2 == 1 {
                // inner: joined to its tree parent by its parent edge
                cycle.push(self.parent_edge[cur]);
            } else {
                // outer: joined to the inner above it by the matched edge
                let bi = self.base_of_top(path_v[j + 1], duals);
                cycle.push((bi, mate[bi]));
            }
            children.push(node_of(self, cur));
        }
        cycle.push((v, to));
        let t_len = path_w.len() - 1;
        if t_len > 0 {
            children.push(node_of(self, path_w[0]));
        }
        for j in 0..t_len {
            let cur = path_w[j];
            if j % 2 == 0 {
                // outer below, inner above: the matched edge upward
                let bj = self.base_of_top(cur, duals);
                cycle.push((bj, mate[bj]));
            } else {
                // inner below, outer above: its parent edge, reversed
                let (p, q) = self.parent_edge[cur];
                cycle.push((q, p));
            }
            if j + 1 < t_len {
                children.push(node_of(self, path_w[j + 1]));
            }
        }
        debug_assert_eq!(children.len(), 1 + s_len + t_len);
        debug_assert_eq!(cycle.len(), children.len());
        debug_assert_eq!(children.len() % 2, 1);

        let base = self.base_of_top(lca, duals);
        let new_b = duals.new_blossom(children.clone(), cycle, base);
        let new_t = self.n + new_b;
        self.ensure_capacity(new_t);
        // Former inner children turn outer: queue their vertices.
        for child in &children {
            let ct = self.top_id(*child);
            if self.get_label(ct) == Label::Inner {
                for m in self.vertices_of_top(ct, duals) {
                    self.queue.push_back(m);
                }
            }
        }
        for m in duals.members(new_b) {
            self.top_of[m] = new_t;
        }
        self.set_label(new_t, Label::Outer);
    }

    /// Flip the matching along the augmenting path from the tree root of `v`
    /// through the tight edge (v, to) into the exposed free node of `to`.
    fn augment(&mut self, v: usize, to: usize, mate: &mut [usize], duals: &mut MatchingDuals) {
        let tt = self.top_of[to];
        if tt >= self.n {
            duals.rematch_to(Node::Blossom(tt - self.n), to, mate);
        }
        let mut iv = v;
        let mut ov = to;
        let mut node = self.top_of[v];
        loop {
            let b = self.base_of_top(node, duals);
            let up = mate[b];
            if node >= self.n {
                duals.rematch_to(Node::Blossom(node - self.n), iv, mate);
            }
            mate[iv] = ov;
            mate[ov] = iv;
            if up == UNMATCHED {
                break;
            }
            let inner = self.top_of[up];
            let (p, q) = self.parent_edge[inner];
            if inner >= self.n {
                duals.rematch_to(Node::Blossom(inner - self.n), q, mate);
            }
            iv = p;
            ov = q;
            node = self.top_of[p];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::dfs_fallback_forest;
    use crate::oracles::brute_mwpm;

    #[test]
    fn augment_single_edge() {
        let g = Graph::undirected(2, &[(0, 1, 4)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let view = f.full_view();
        let d = MatchingDuals::from_y(&[2, 2]);
        match weighted_augment(&g, &view, &Matching::new(2), &d).unwrap() {
            WeightedAugmentOutcome::Augmented(m, d2) => {
                assert_eq!(m.edges(), vec![(0, 1)]);
                assert!(check_duals(&g, &view, &m, &d2).is_ok());
            }
            _ => panic!("expected augmentation"),
        }
    }

    #[test]
    fn augment_edgeless_is_maximum() {
        let g = Graph::undirected(3, &[]).unwrap();
        let f = dfs_fallback_forest(&g);
        let view = f.full_view();
        let d = MatchingDuals::new(3);
        assert!(matches!(
            weighted_augment(&g, &view, &Matching::new(3), &d).unwrap(),
            WeightedAugmentOutcome::Maximum(_)
        ));
    }

    #[test]
    fn augment_p3_keeps_duals_valid() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 5)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let view = f.full_view();
        let d = MatchingDuals::from_y(&[1, 0, 5]);
        match weighted_augment(&g, &view, &Matching::new(3), &d).unwrap() {
            WeightedAugmentOutcome::Augmented(m, d2) => {
                assert_eq!(m.len(), 1);
                assert!(check_duals(&g, &view, &m, &d2).is_ok());
            }
            _ => panic!("expected augmentation"),
        }
    }

    #[test]
    fn augment_rejects_bad_duals() {
        let g = Graph::undirected(2, &[(0, 1, 4)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let d = MatchingDuals::from_y(&[1, 1]); // 1 + 1 < 4
        assert!(weighted_augment(&g, &f.full_view(), &Matching::new(2), &d).is_err());
    }

    #[test]
    fn mwpm_c4() {
        let g = Graph::undirected(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 2)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let (m, d) = max_weight_perfect_matching_checked(&g, &f).unwrap();
        assert_eq!(m.weight(&g).unwrap(), 4);
        assert_eq!(m.edges(), vec![(0, 3), (1, 2)]);
        assert!(check_duals(&g, &f.full_view(), &m, &d).is_ok());
    }

    #[test]
    fn mwpm_single_edge() {
        let g = Graph::undirected(2, &[(0, 1, 7)]).unwrap();
        let f = dfs_fallback_forest(&g);
        let (m, _) = max_weight_perfect_matching(&g, &f).unwrap();
        assert_eq!(m.weight(&g).unwrap(), 7);
    }

    #[test]
    fn mwpm_odd_graph_fails() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let f = dfs_fallback_forest(&g);
        match max_weight_perfect_matching(&g, &f) {
            Err(Error::NoPerfectMatching { best }) => assert_eq!(best.len(), 1),
            other => panic!("expected imperfect error, got {other:?}"),
        }
    }

    /// Needs a blossom: a 5-cycle where the heavy perfect-matching choice
    /// goes around the odd structure.
    #[test]
    fn mwpm_blossom_heavy() {
        // C6 with chords; weights force blossom handling.
        let g = Graph::undirected(
            6,
            &[
                (0, 1, 6),
                (1, 2, 3),
                (2, 3, 8),
                (3, 4, 2),
                (4, 5, 7),
                (5, 0, 4),
                (0, 3, 1),
                (1, 4, 9),
            ],
        )
        .unwrap();
        let f = dfs_fallback_forest(&g);
        let (m, d) = max_weight_perfect_matching_checked(&g, &f).unwrap();
        let want = brute_mwpm(&g).unwrap().unwrap().0;
        assert_eq!(m.weight(&g).unwrap(), want);
        assert!(check_duals(&g, &f.full_view(), &m, &d).is_ok());
    }

    #[test]
    fn mwpm_matches_oracle_random() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut tested = 0;
        while tested < 300 {
            let n = 2 * rng.gen_range(1..=5usize);
            let g = crate::gen::random_graph(n, 0.5, -9..=9, false, &mut rng);
            let oracle = brute_mwpm(&g).unwrap();
            let forest = dfs_fallback_forest(&g);
            match (max_weight_perfect_matching_checked(&g, &forest), oracle) {
                (Ok((m, d)), Some((w, _))) => {
                    assert!(m.is_perfect_on(&forest.full_view()));
                    assert_eq!(m.weight(&g).unwrap(), w);
                    assert!(check_duals(&g, &forest.full_view(), &m, &d).is_ok());
                }
                (Err(Error::NoPerfectMatching { .. }), None) => {}
                (got, want) => panic!("solver/oracle disagree: {got:?} vs {want:?}"),
            }
            tested += 1;
        }
    }
}
