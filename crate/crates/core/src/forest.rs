//! Elimination forests: representation, validation, construction from tree
//! decompositions, plus an exact exponential tree-depth search for tiny
//! graphs and a DFS fallback for arbitrary ones.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSetView};

/// A rooted forest on the vertex set of a graph. For a valid elimination
/// forest every graph edge joins an ancestor-descendant pair (checked by
/// [`validate_forest`], not by construction).
#[derive(Debug, Clone)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    /// Preorder sequence; children visited in ascending vertex id.
    order: Vec<usize>,
    /// Position of each vertex in `order`. Subtrees are contiguous ranges.
    pos: Vec<usize>,
    size: Vec<usize>,
    /// Number of vertices on the root-to-v path, root counting as 1.
    depth_of: Vec<usize>,
    depth: usize,
}

impl EliminationForest {
    /// Build from parent links (`None` = root). Fails with a cycle witness if
    /// the links are not acyclic, or if a parent is out of range.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if *p >= n {
                    return Err(Error::input(
                        None,
                        format!("parent {p} of vertex {v} out of range"),
                    ));
                }
                if *p == v {
                    return Err(Error::ForestCycle(vec![v]));
                }
            }
        }
        // Cycle detection by walking parent chains with tri-state marks.
        let mut state = vec![0u8; n]; // 0 unseen, 1 on current chain, 2 done
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut chain = Vec::new();
            let mut v = start;
            loop {
                if state[v] == 1 {
                    let at = chain.iter().position(|&c| c == v).unwrap();
                    return Err(Error::ForestCycle(chain[at..].to_vec()));
                }
                if state[v] == 2 {
                    break;
                }
                state[v] = 1;
                chain.push(v);
                match parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            for c in chain {
                state[c] = 2;
            }
        }

        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for v in 0..n {
            match parent[v] {
                Some(p) => children[p].push(v),
                None => roots.push(v),
            }
        }
        // `0..n` iteration already yields ascending children and roots.

        let mut order = Vec::with_capacity(n);
        let mut pos = vec![0usize; n];
        let mut size = vec![1usize; n];
        let mut depth_of = vec![0usize; n];
        let mut depth = 0;
        let mut stack: Vec<(usize, usize)> = Vec::new(); // (vertex, next child index)
        for &r in &roots {
            depth_of[r] = 1;
            pos[r] = order.len();
            order.push(r);
            stack.push((r, 0));
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < children[v].len() {
                    let c = children[v][*i];
                    *i += 1;
                    depth_of[c] = depth_of[v] + 1;
                    pos[c] = order.len();
                    order.push(c);
                    stack.push((c, 0));
                } else {
                    stack.pop();
                    depth = depth.max(depth_of[v]);
                    if let Some(&(p, _)) = stack.last() {
                        size[p] += size[v];
                    }
                }
            }
        }

        Ok(EliminationForest {
            parent,
            children,
            roots,
            order,
            pos,
            size,
            depth_of,
            depth,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Maximum number of vertices on a root-to-leaf path; 0 when empty.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn preorder(&self) -> &[usize] {
        &self.order
    }

    pub fn preorder_pos(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.size[v]
    }

    /// Vertices on the root-to-v path, the root counting as 1.
    pub fn depth_of(&self, v: usize) -> usize {
        self.depth_of[v]
    }

    /// True iff `a` is an ancestor of `b` or `a == b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.pos[a] <= self.pos[b] && self.pos[b] < self.pos[a] + self.size[a]
    }

    pub fn subtree_view(&self, x: usize) -> VertexSetView<'_> {
        VertexSetView::subtree(self, x)
    }

    pub fn full_view(&self) -> VertexSetView<'_> {
        VertexSetView::full(self)
    }

    /// Number of graph edges with both endpoints inside the preorder range
    /// `[start, end)`. Each edge is counted at its deeper endpoint.
    pub(crate) fn subtree_edge_count(&self, g: &Graph, start: usize, end: usize) -> usize {
        let mut cnt = 0;
        for &v in &self.order[start..end] {
            for &id in g.out_edges(v) {
                let o = self.pos[g.other_endpoint(id, v)];
                if o < self.pos[v] && o >= start {
                    cnt += 1;
                }
            }
            if g.is_directed() {
                for &id in g.in_edges(v) {
                    let o = self.pos[g.other_endpoint(id, v)];
                    if o < self.pos[v] && o >= start {
                        cnt += 1;
                    }
                }
            }
        }
        cnt
    }
}

/// Check that `f` is a valid elimination forest of `g`: same vertex count
/// and every edge joins an ancestor-descendant pair. Returns the first
/// violating edge otherwise.
pub fn validate_forest(g: &Graph, f: &EliminationForest) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::contract(format!(
            "forest has {} vertices, graph has {}",
            f.n(),
            g.n()
        )));
    }
    for e in g.edges() {
        if !f.is_ancestor(e.u, e.v) && !f.is_ancestor(e.v, e.u) {
            return Err(Error::ForestViolation { u: e.u, v: e.v });
        }
    }
    Ok(())
}

/// Depth of a forest (`0` for the empty forest). Recomputes from parent
/// links rather than trusting the cached value; used by validation tests.
pub fn forest_depth(f: &EliminationForest) -> usize {
    (0..f.n()).map(|v| f.depth_of(v)).max().unwrap_or(0)
}

/// A depth-first spanning forest of the underlying undirected graph. Always
/// a valid elimination forest (every non-tree edge joins an ancestor and a
/// descendant), but with no depth guarantee.
///
/// Deterministic: roots and neighbors are taken in ascending vertex id.
pub fn dfs_fallback_forest(g: &Graph) -> EliminationForest {
    let n = g.n();
    // Underlying undirected neighbor lists, ascending, deduplicated.
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        nbrs[e.u].push(e.v);
        nbrs[e.v].push(e.u);
    }
    for l in nbrs.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }

    let mut parent = vec![None; n];
    let mut visited = vec![false; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for r in 0..n {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        stack.push((r, 0));
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < nbrs[v].len() {
                let u = nbrs[v][*i];
                *i += 1;
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = Some(v);
                    stack.push((u, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    EliminationForest::from_parents(parent).expect("DFS forest is acyclic")
}

const EXACT_TD_LIMIT: usize = 12;

/// Minimum-depth elimination forest by exhaustive search over vertex subsets.
/// Refuses graphs with more than 12 vertices.
pub fn exact_treedepth(g: &Graph) -> Result<(usize, EliminationForest)> {
    let n = g.n();
    if n > EXACT_TD_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EXACT_TD_LIMIT,
        });
    }
    let mut nbr = vec![0u32; n];
    for e in g.edges() {
        nbr[e.u] |= 1 << e.v;
        nbr[e.v] |= 1 << e.u;
    }

    struct Search {
        nbr: Vec<u32>,
        memo: std::collections::HashMap<u32, usize>,
        best_root: std::collections::HashMap<u32, usize>,
    }

    impl Search {
        fn components(&self, mask: u32) -> Vec<u32> {
            let mut comps = Vec::new();
            let mut left = mask;
            while left != 0 {
                let seed = left & left.wrapping_neg();
                let mut comp = seed;
                loop {
                    let mut grow = comp;
                    let mut m = comp;
                    while m != 0 {
                        let v = m.trailing_zeros() as usize;
                        m &= m - 1;
                        grow |= self.nbr[v] & mask;
                    }
                    if grow == comp {
                        break;
                    }
                    comp = grow;
                }
                comps.push(comp);
                left &= !comp;
            }
            comps
        }

        fn depth(&mut self, mask: u32) -> usize {
            if mask == 0 {
                return 0;
            }
            self.components(mask)
                .into_iter()
                .map(|c| self.depth_connected(c))
                .max()
                .unwrap()
        }

        fn depth_connected(&mut self, mask: u32) -> usize {
            if let Some(&d) = self.memo.get(&mask) {
                return d;
            }
            let mut best = usize::MAX;
            let mut root = 0;
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let d = 1 + self.depth(mask & !(1 << v));
                if d < best {
                    best = d;
                    root = v;
                }
            }
            self.memo.insert(mask, best);
            self.best_root.insert(mask, root);
            best
        }

        fn build(&mut self, mask: u32, parent_of: Option<usize>, out: &mut [Option<usize>]) {
            for comp in self.components(mask) {
                self.depth_connected(comp); // ensure best_root is populated
                let r = self.best_root[&comp];
                out[r] = parent_of;
                self.build(comp & !(1 << r), Some(r), out);
            }
        }
    }

    let mut s = Search {
        nbr,
        memo: Default::default(),
        best_root: Default::default(),
    };
    let full = if n == 32 { !0 } else { (1u32 << n) - 1 };
    let depth = s.depth(full);
    let mut parent = vec![None; n];
    s.build(full, None, &mut parent);
    let forest = EliminationForest::from_parents(parent)?;
    debug_assert_eq!(forest.depth(), depth);
    Ok((depth, forest))
}

/// A tree decomposition: bags of vertices linked by a bag tree (a forest of
/// bags is accepted; each component is handled independently).
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    /// Edges over bag indices.
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Check the two decomposition conditions against `g`, naming the failed
    /// condition in the error.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let nb = self.bags.len();
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(Error::InvalidDecomposition(format!(
                        "bag {i} contains out-of-range vertex {v}"
                    )));
                }
            }
        }
        for &(x, y) in &self.tree {
            if x >= nb || y >= nb {
                return Err(Error::InvalidDecomposition(format!(
                    "bag-tree edge ({x}, {y}) out of range"
                )));
            }
        }
        // Acyclicity of the bag tree.
        let mut dsu: Vec<usize> = (0..nb).collect();
        fn find(dsu: &mut [usize], x: usize) -> usize {
            if dsu[x] != x {
                dsu[x] = find(dsu, dsu[x]);
            }
            dsu[x]
        }
        for &(x, y) in &self.tree {
            let (rx, ry) = (find(&mut dsu, x), find(&mut dsu, y));
            if rx == ry {
                return Err(Error::InvalidDecomposition(
                    "bag tree contains a cycle".into(),
                ));
            }
            dsu[rx] = ry;
        }
        // Per-vertex sorted bag lists.
        let mut in_bags: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            let mut seen = bag.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != bag.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {i} lists a vertex twice"
                )));
            }
            for &v in bag {
                in_bags[v].push(i);
            }
        }
        // Condition: every edge is inside some bag.
        for e in g.edges() {
            let (a, b) = (&in_bags[e.u], &in_bags[e.v]);
            let mut i = 0;
            let mut j = 0;
            let mut found = false;
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        found = true;
                        break;
                    }
                }
            }
            if !found {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({}, {}) is not contained in any bag",
                    e.u, e.v
                )));
            }
        }
        // Condition: bags containing a vertex induce a connected subtree.
        // In an acyclic bag graph this holds iff the number of tree edges
        // with both ends containing v is |bags(v)| - 1.
        let mut inner_edges = vec![0usize; g.n()];
        for &(x, y) in &self.tree {
            let (bx, by) = (&self.bags[x], &self.bags[y]);
            let (small, large) = if bx.len() <= by.len() { (bx, by) } else { (by, bx) };
            for &v in small {
                if large.contains(&v) {
                    inner_edges[v] += 1;
                }
            }
        }
        for v in 0..g.n() {
            if !in_bags[v].is_empty() && inner_edges[v] != in_bags[v].len() - 1 {
                return Err(Error::InvalidDecomposition(format!(
                    "bags containing vertex {v} do not induce a connected subtree"
                )));
            }
        }
        Ok(())
    }
}

/// Documented constant of the depth bound of [`forest_from_decomposition`]:
/// the returned forest has depth at most `C * (width + 1) * ceil(log2(n + 1))`.
pub const DECOMPOSITION_DEPTH_CONSTANT: usize = 2;

/// Convert a valid tree decomposition of `g` into an elimination forest by
/// recursive centroid splitting of the bag tree: the centroid bag's vertices
/// are chained below the current path, then each remaining component of the
/// bag tree is processed below the chain.
///
/// Adjacent comparable bags are merged first, which bounds the number of
/// bags by n + 1 and yields depth at most
/// `C * (width + 1) * ceil(log2(n + 1))` with C = [`DECOMPOSITION_DEPTH_CONSTANT`].
pub fn forest_from_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<EliminationForest> {
    td.validate(g)?;
    let n = g.n();

    // Merge adjacent bags where one contains the other.
    let nb = td.bags.len();
    let mut bags: Vec<Option<Vec<usize>>> = td
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            Some(b)
        })
        .collect();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); nb];
    for &(x, y) in &td.tree {
        adj[x].insert(y);
        adj[y].insert(x);
    }
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|v| b.binary_search(v).is_ok());
    loop {
        let mut merged = false;
        for x in 0..nb {
            if bags[x].is_none() {
                continue;
            }
            let nbrs: Vec<usize> = adj[x].iter().copied().collect();
            for y in nbrs {
                let (bx, by) = match (&bags[x], &bags[y]) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                };
                if !subset(by, bx) && !subset(bx, by) {
                    continue;
                }
                // Keep the superset at index x, absorb y.
                if bags[y].as_ref().unwrap().len() > bags[x].as_ref().unwrap().len() {
                    bags[x] = bags[y].take();
                } else {
                    bags[y] = None;
                }
                let y_adj: Vec<usize> = adj[y].iter().copied().collect();
                adj[y].clear();
                for z in y_adj {
                    adj[z].remove(&y);
                    if z != x {
                        adj[z].insert(x);
                        adj[x].insert(z);
                    }
                }
                merged = true;
            }
        }
        if !merged {
            break;
        }
    }

    let alive: Vec<usize> = (0..nb).filter(|&i| bags[i].is_some()).collect();

    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut placed = vec![false; n];

    // Recursive centroid split of one bag-tree component.
    struct Ctx<'a> {
        bags: &'a [Option<Vec<usize>>],
        adj: &'a [std::collections::BTreeSet<usize>],
        parent: &'a mut [Option<usize>],
        placed: &'a mut [bool],
        comp_stamp: Vec<u32>,
        stamp: u32,
    }

    impl Ctx<'_> {
        fn run(&mut self, comp: Vec<usize>, mut below: Option<usize>) {
            if comp.is_empty() {
                return;
            }
            self.stamp += 1;
            let stamp = self.stamp;
            for &b in &comp {
                self.comp_stamp[b] = stamp;
            }
            // Subtree sizes from an arbitrary root, then centroid selection.
            let root = comp[0];
            let mut order = Vec::with_capacity(comp.len());
            let mut par = std::collections::HashMap::new();
            par.insert(root, usize::MAX);
            order.push(root);
            let mut qi = 0;
            while qi < order.len() {
                let b = order[qi];
                qi += 1;
                for &c in &self.adj[b] {
                    if self.comp_stamp[c] == stamp && !par.contains_key(&c) {
                        par.insert(c, b);
                        order.push(c);
                    }
                }
            }
            let total = order.len();
            let mut sz: std::collections::HashMap<usize, usize> =
                order.iter().map(|&b| (b, 1usize)).collect();
            for &b in order.iter().rev() {
                let p = par[&b];
                if p != usize::MAX {
                    *sz.get_mut(&p).unwrap() += sz[&b];
                }
            }
            // Centroid: minimize the largest remaining part; ties by lowest
            // bag index for determinism.
            let mut centroid = usize::MAX;
            let mut best = usize::MAX;
            for &b in &order {
                let mut worst = total - sz[&b];
                for &c in &self.adj[b] {
                    if self.comp_stamp[c] == stamp && par[&c] == b {
                        worst = worst.max(sz[&c]);
                    }
                }
                if worst < best || (worst == best && b < centroid) {
                    best = worst;
                    centroid = b;
                }
            }
            // Chain the centroid bag's unplaced vertices below the path.
            for &v in self.bags[centroid].as_ref().unwrap() {
                if !self.placed[v] {
                    self.placed[v] = true;
                    self.parent[v] = below;
                    below = Some(v);
                }
            }
            // Recurse into the components left after removing the centroid.
            self.comp_stamp[centroid] = 0;
            let mut seen: std::collections::HashSet<usize> = Default::default();
            let neighbors: Vec<usize> = self.adj[centroid]
                .iter()
                .copied()
                .filter(|&c| self.comp_stamp[c] == stamp)
                .collect();
            for start in neighbors {
                if seen.contains(&start) {
                    continue;
                }
                let mut sub = vec![start];
                seen.insert(start);
                let mut qi = 0;
                while qi < sub.len() {
                    let b = sub[qi];
                    qi += 1;
                    for &c in &self.adj[b] {
                        if self.comp_stamp[c] == stamp && c != centroid && seen.insert(c) {
                            sub.push(c);
                        }
                    }
                }
                self.run(sub, below);
            }
        }
    }

    let mut ctx = Ctx {
        bags: &bags,
        adj: &adj,
        parent: &mut parent,
        placed: &mut placed,
        comp_stamp: vec![0; nb],
        stamp: 0,
    };
    // Process each component of the merged bag forest, lowest bag id first.
    let mut done: Vec<bool> = vec![false; nb];
    for &seed in &alive {
        if done[seed] {
            continue;
        }
        let mut comp = vec![seed];
        done[seed] = true;
        let mut qi = 0;
        while qi < comp.len() {
            let b = comp[qi];
            qi += 1;
            for &c in &ctx.adj[b] {
                if !done[c] && bags[c].is_some() {
                    done[c] = true;
                    comp.push(c);
                }
            }
        }
        ctx.run(comp, None);
    }

    // Vertices in no bag become isolated roots.
    let forest = EliminationForest::from_parents(parent)?;
    debug_assert!(validate_forest(g, &forest).is_ok());
    Ok(forest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(parents: &[i64]) -> EliminationForest {
        let p = parents
            .iter()
            .map(|&x| if x < 0 { None } else { Some(x as usize) })
            .collect();
        EliminationForest::from_parents(p).unwrap()
    }

    #[test]
    fn validate_triangle_chain_ok() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert!(validate_forest(&g, &f(&[-1, 0, 1])).is_ok());
    }

    #[test]
    fn validate_triangle_star_violation() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        match validate_forest(&g, &f(&[-1, 0, 0])) {
            Err(Error::ForestViolation { u, v }) => assert_eq!((u, v), (1, 2)),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn validate_edgeless_any_forest() {
        let g = Graph::undirected(4, &[]).unwrap();
        assert!(validate_forest(&g, &f(&[-1, 0, 0, 2])).is_ok());
    }

    #[test]
    fn cycle_witness() {
        let p = vec![Some(1), Some(0)];
        match EliminationForest::from_parents(p) {
            Err(Error::ForestCycle(c)) => {
                assert_eq!(c.len(), 2);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn depth_examples() {
        assert_eq!(f(&[-1]).depth(), 1);
        assert_eq!(f(&[-1, 0, 1, 2]).depth(), 4);
        // root 1, children {0, 2}, 2 -> 3
        assert_eq!(f(&[1, -1, 1, 2]).depth(), 3);
        assert_eq!(
            EliminationForest::from_parents(vec![]).unwrap().depth(),
            0
        );
        assert_eq!(forest_depth(&f(&[1, -1, 1, 2])), 3);
    }

    #[test]
    fn dfs_fallback_examples() {
        let tri = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let t = dfs_fallback_forest(&tri);
        assert_eq!(t.parents(), &[None, Some(0), Some(1)]);
        assert_eq!(t.depth(), 3);

        let edgeless = Graph::undirected(4, &[]).unwrap();
        let e = dfs_fallback_forest(&edgeless);
        assert_eq!(e.depth(), 1);
        assert_eq!(e.roots().len(), 4);

        let p4 = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(dfs_fallback_forest(&p4).depth(), 4);
    }

    #[test]
    fn dfs_fallback_always_valid() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..12);
            let directed = rng.gen_bool(0.5);
            let g = crate::gen::random_graph(n, 0.4, -5..=5, directed, &mut rng);
            let f = dfs_fallback_forest(&g);
            validate_forest(&g, &f).unwrap();
        }
    }

    #[test]
    fn exact_treedepth_examples() {
        let k3 = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(exact_treedepth(&k3).unwrap().0, 3);

        let p4 = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let (d, forest) = exact_treedepth(&p4).unwrap();
        assert_eq!(d, 3);
        validate_forest(&p4, &forest).unwrap();
        assert_eq!(forest.depth(), 3);

        let e5 = Graph::undirected(5, &[]).unwrap();
        assert_eq!(exact_treedepth(&e5).unwrap().0, 1);

        let big = Graph::undirected(13, &[]).unwrap();
        assert!(matches!(
            exact_treedepth(&big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn exact_treedepth_cliques_and_relation() {
        for n in 1..=6 {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v, 1i64));
                }
            }
            let g = Graph::undirected(n, &edges).unwrap();
            assert_eq!(exact_treedepth(&g).unwrap().0, n);
        }
    }

    /// exact_treedepth is minimal: no valid forest on n <= 5 vertices beats it.
    #[test]
    fn exact_treedepth_is_minimum_exhaustive() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..15 {
            let n = rng.gen_range(1..=5usize);
            let g = crate::gen::random_graph(n, 0.5, 0..=0, false, &mut rng);
            let (best, _) = exact_treedepth(&g).unwrap();
            // Enumerate all parent assignments.
            let mut assignment = vec![0usize; n]; // 0 = root, k = parent k-1
            loop {
                let parents: Vec<Option<usize>> = assignment
                    .iter()
                    .map(|&a| if a == 0 { None } else { Some(a - 1) })
                    .collect();
                if let Ok(forest) = EliminationForest::from_parents(parents) {
                    if validate_forest(&g, &forest).is_ok() {
                        assert!(forest.depth() >= best);
                    }
                }
                // Next assignment in mixed radix (skip self-parent values).
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    assignment[i] += 1;
                    if assignment[i] == i + 1 {
                        assignment[i] += 1; // skip "parent of itself"
                    }
                    if assignment[i] <= n {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn decomposition_single_bag() {
        let g = Graph::undirected(1, &[]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0]],
            tree: vec![],
        };
        let forest = forest_from_decomposition(&g, &td).unwrap();
        assert_eq!(forest.depth(), 1);
        assert_eq!(forest.roots(), &[0]);
    }

    #[test]
    fn decomposition_p4() {
        let g = Graph::undirected(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            tree: vec![(0, 1), (1, 2)],
        };
        let forest = forest_from_decomposition(&g, &td).unwrap();
        validate_forest(&g, &forest).unwrap();
        assert!(forest.depth() <= 2 * 2 * 2);
    }

    #[test]
    fn decomposition_star() {
        let g = Graph::undirected(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![0, 2], vec![0, 3]],
            tree: vec![(0, 1), (1, 2)],
        };
        let forest = forest_from_decomposition(&g, &td).unwrap();
        validate_forest(&g, &forest).unwrap();
        assert!(forest.depth() <= 2 * 2 * 2);
        assert_eq!(exact_treedepth(&g).unwrap().0, 2);
    }

    #[test]
    fn decomposition_rejects_uncovered_edge() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            tree: vec![(0, 1)],
        };
        assert!(matches!(
            forest_from_decomposition(&g, &td),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn decomposition_rejects_disconnected_occurrence() {
        let g = Graph::undirected(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0, 1]],
            tree: vec![(0, 1), (1, 2)],
        };
        // Vertex 0 appears in bags 0 and 2 which are not adjacent.
        assert!(matches!(
            td.validate(&g),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn decomposition_random_partial_two_trees() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.gen_range(3..20);
            let (g, td) = crate::gen::random_partial_two_tree(n, 0.7, &mut rng);
            td.validate(&g).unwrap();
            let forest = forest_from_decomposition(&g, &td).unwrap();
            validate_forest(&g, &forest).unwrap();
            let bound =
                2 * 3 * ((n as f64 + 1.0).log2().ceil() as usize);
            assert!(
                forest.depth() <= bound,
                "depth {} exceeds bound {bound} for n = {n}",
                forest.depth()
            );
        }
    }
}
