//! Components, bridges, blocks and minimal 2-vertex cuts.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

const NONE: usize = usize::MAX;

/// Largest small side searched by direct enumeration before falling back to
/// the per-vertex articulation scan.
const SMALL_SIDE_ENUM: usize = 4;

/// A maximal 2-connected piece, or a degenerate one (bridge, loop, isolated vertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCut {
    pub u: VertexId,
    pub v: VertexId,
    pub small_side: BTreeSet<VertexId>,
}

/// Dense view: vertex i is the i-th smallest id; loops dropped.
struct Dense {
    verts: Vec<VertexId>,
    // (neighbour, edge index) per incidence; parallels repeated
    adj: Vec<Vec<(usize, usize)>>,
    edge_ids: Vec<EdgeId>,
}

impl Dense {
    fn new(g: &Multigraph) -> Self {
        let verts: Vec<VertexId> = g.vertices().collect();
        let mut adj = vec![Vec::new(); verts.len()];
        let mut edge_ids = Vec::new();
        for (e, a, b) in g.edges() {
            if a == b {
                continue;
            }
            let i = edge_ids.len();
            edge_ids.push(e);
            let (x, y) = (
                verts.binary_search(&a).expect("endpoint"),
                verts.binary_search(&b).expect("endpoint"),
            );
            adj[x].push((y, i));
            adj[y].push((x, i));
        }
        Dense {
            verts,
            adj,
            edge_ids,
        }
    }

    fn n(&self) -> usize {
        self.verts.len()
    }

    /// Component labels of the graph with `banned` vertices removed.
    fn components(&self, banned: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        for &b in banned {
            seen[b] = true;
        }
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn to_set(&self, c: &[usize]) -> BTreeSet<VertexId> {
        c.iter().map(|&i| self.verts[i]).collect()
    }
}

/// Result of one lowpoint DFS over a graph with `skip` removed.
struct LowDfs {
    disc: Vec<usize>,
    low: Vec<usize>,
    size: Vec<usize>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    order: Vec<usize>,
}

fn low_dfs(d: &Dense, root: usize, skip: usize) -> LowDfs {
    let n = d.n();
    let mut r = LowDfs {
        disc: vec![NONE; n],
        low: vec![NONE; n],
        size: vec![1; n],
        parent: vec![NONE; n],
        parent_edge: vec![NONE; n],
        order: Vec::new(),
    };
    let mut cursor = vec![0usize; n];
    let mut stack = vec![root];
    r.disc[root] = 0;
    r.low[root] = 0;
    r.order.push(root);
    while let Some(&x) = stack.last() {
        if cursor[x] < d.adj[x].len() {
            let (y, e) = d.adj[x][cursor[x]];
            cursor[x] += 1;
            if y == skip || e == r.parent_edge[x] {
                continue;
            }
            if r.disc[y] == NONE {
                r.disc[y] = r.order.len();
                r.low[y] = r.disc[y];
                r.parent[y] = x;
                r.parent_edge[y] = e;
                r.order.push(y);
                stack.push(y);
            } else {
                r.low[x] = r.low[x].min(r.disc[y]);
            }
        } else {
            stack.pop();
            let p = r.parent[x];
            if p != NONE {
                r.low[p] = r.low[p].min(r.low[x]);
                r.size[p] += r.size[x];
            }
        }
    }
    r
}

/// Vertex sets of the connected components, ordered by smallest member.
pub fn components(g: &Multigraph) -> Vec<BTreeSet<VertexId>> {
    let d = Dense::new(g);
    d.components(&[]).iter().map(|c| d.to_set(c)).collect()
}

pub fn is_connected(g: &Multigraph) -> bool {
    g.vertex_count() <= 1 || components(g).len() == 1
}

/// Bridges and the vertex sets of the bridgeless pieces (isolated vertices count).
pub fn two_edge_components(g: &Multigraph) -> Result<(BTreeSet<EdgeId>, Vec<BTreeSet<VertexId>>)> {
    if !is_connected(g) {
        return Err(Error::precondition(
            "two_edge_components needs a connected graph",
        ));
    }
    let d = Dense::new(g);
    let mut bridges = BTreeSet::new();
    if d.n() > 0 {
        let r = low_dfs(&d, 0, NONE);
        for x in 0..d.n() {
            if r.parent[x] != NONE && r.low[x] > r.disc[r.parent[x]] {
                bridges.insert(d.edge_ids[r.parent_edge[x]]);
            }
        }
    }
    let mut pruned = g.clone();
    for &e in &bridges {
        pruned.remove_edge(e)?;
    }
    Ok((bridges, components(&pruned)))
}

/// Biconnected decomposition. Loops are degenerate blocks of their own.
pub fn blocks(g: &Multigraph) -> Result<BlockDecomposition> {
    if !is_connected(g) {
        return Err(Error::precondition("blocks needs a connected graph"));
    }
    let d = Dense::new(g);
    let n = d.n();
    let mut blocks = Vec::new();
    let mut cut = vec![false; n];
    if n > 0 {
        let mut disc = vec![NONE; n];
        let mut low = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut cursor = vec![0usize; n];
        let mut children = vec![0usize; n];
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut counter = 0;
        let root = 0;
        disc[root] = 0;
        low[root] = 0;
        counter += 1;
        let mut stack = vec![root];
        while let Some(&x) = stack.last() {
            if cursor[x] < d.adj[x].len() {
                let (y, e) = d.adj[x][cursor[x]];
                cursor[x] += 1;
                if e == parent_edge[x] {
                    continue;
                }
                if disc[y] == NONE {
                    disc[y] = counter;
                    low[y] = counter;
                    counter += 1;
                    parent_edge[y] = e;
                    children[x] += 1;
                    edge_stack.push(e);
                    stack.push(y);
                } else if disc[y] < disc[x] {
                    low[x] = low[x].min(disc[y]);
                    edge_stack.push(e);
                }
            } else {
                stack.pop();
                let Some(&p) = stack.last() else { break };
                low[p] = low[p].min(low[x]);
                if low[x] >= disc[p] {
                    if p != root || children[p] > 1 {
                        cut[p] = true;
                    }
                    let mut edges = BTreeSet::new();
                    let mut verts = BTreeSet::new();
                    let pe = parent_edge[x];
                    while let Some(e) = edge_stack.pop() {
                        edges.insert(d.edge_ids[e]);
                        let (a, b) = g.endpoints(d.edge_ids[e]).expect("edge");
                        verts.insert(a);
                        verts.insert(b);
                        if e == pe {
                            break;
                        }
                    }
                    blocks.push(Block {
                        vertices: verts,
                        edges,
                    });
                }
            }
        }
        if n == 1 && g.edge_count() == 0 {
            blocks.push(Block {
                vertices: [d.verts[0]].into_iter().collect(),
                edges: BTreeSet::new(),
            });
        }
    }
    let mut cut_vertices: BTreeSet<VertexId> =
        (0..n).filter(|&x| cut[x]).map(|x| d.verts[x]).collect();
    for (e, a, b) in g.edges() {
        if a == b {
            blocks.push(Block {
                vertices: [a].into_iter().collect(),
                edges: [e].into_iter().collect(),
            });
            if !g.neighbors(a).is_empty() || g.multiplicity(a, a) > 1 {
                cut_vertices.insert(a);
            }
        }
    }
    blocks.sort_by(|x, y| {
        (x.vertices.iter().next(), x.edges.iter().next())
            .cmp(&(y.vertices.iter().next(), y.edges.iter().next()))
    });
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
    })
}

/// Vertices whose removal disconnects `g` (loops ignored).
pub fn cut_vertices(g: &Multigraph) -> BTreeSet<VertexId> {
    let d = Dense::new(g);
    let mut out = BTreeSet::new();
    let mut seen = vec![false; d.n()];
    for root in 0..d.n() {
        if seen[root] {
            continue;
        }
        let r = low_dfs(&d, root, NONE);
        let mut root_children = 0;
        for &x in &r.order {
            seen[x] = true;
            let p = r.parent[x];
            if p == NONE {
                continue;
            }
            if p == root {
                root_children += 1;
            } else if r.low[x] >= r.disc[p] {
                out.insert(d.verts[p]);
            }
        }
        if root_children > 1 {
            out.insert(d.verts[root]);
        }
    }
    out
}

/// A 2-vertex cut whose smallest side is as small as possible.
///
/// Ties go to the lexicographically smallest `(min, max)` pair, then to the
/// side containing the smallest label.
pub fn minimal_two_cut(b: &Multigraph) -> Result<Option<TwoCut>> {
    if b.vertex_count() < 4 {
        return Err(Error::precondition(
            "minimal_two_cut needs at least 4 vertices",
        ));
    }
    if !is_connected(b) {
        return Err(Error::precondition(
            "minimal_two_cut needs a connected graph",
        ));
    }
    if !cut_vertices(b).is_empty() {
        return Err(Error::precondition(
            "minimal_two_cut needs a graph without cut vertices",
        ));
    }
    let d = Dense::new(b);
    let best = small_side_search(&d).or_else(|| articulation_scan(&d));
    let Some((size, u, v)) = best else {
        return Ok(None);
    };
    let side = d
        .components(&[u, v])
        .into_iter()
        .filter(|c| c.len() == size)
        .min_by_key(|c| c[0])
        .ok_or_else(|| Error::internal("2-cut lost its small side"))?;
    Ok(Some(TwoCut {
        u: d.verts[u],
        v: d.verts[v],
        small_side: d.to_set(&side),
    }))
}

fn distinct_neighbours(d: &Dense, x: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = d.adj[x].iter().map(|&(y, _)| y).collect();
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// Enumerates connected sets of size up to `SMALL_SIDE_ENUM` whose
/// neighbourhood is exactly two vertices.
fn small_side_search(d: &Dense) -> Option<(usize, usize, usize)> {
    let n = d.n();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|x| distinct_neighbours(d, x)).collect();
    let mut level: BTreeSet<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    for k in 1..=SMALL_SIDE_ENUM {
        if k + 2 >= n {
            // the rest would be empty
            return None;
        }
        let mut best: Option<(usize, usize)> = None;
        for s in &level {
            let mut boundary: Vec<usize> = Vec::new();
            for &x in s {
                for &y in &nbrs[x] {
                    if s.binary_search(&y).is_err() && !boundary.contains(&y) {
                        boundary.push(y);
                        if boundary.len() > 2 {
                            break;
                        }
                    }
                }
                if boundary.len() > 2 {
                    break;
                }
            }
            if boundary.len() == 2 {
                let pair = (boundary[0].min(boundary[1]), boundary[0].max(boundary[1]));
                if best.is_none_or(|b| pair < b) {
                    best = Some(pair);
                }
            }
        }
        if let Some((u, v)) = best {
            return Some((k, u, v));
        }
        if k == SMALL_SIDE_ENUM {
            break;
        }
        let mut next = BTreeSet::new();
        for s in &level {
            for &x in s {
                for &y in &nbrs[x] {
                    if s.binary_search(&y).is_err() {
                        let mut t = s.clone();
                        let pos = t.binary_search(&y).unwrap_err();
                        t.insert(pos, y);
                        next.insert(t);
                    }
                }
            }
        }
        level = next;
    }
    None
}

/// For each u, the articulation points v of B - u and the smallest component
/// of B - u - v, read off one lowpoint DFS.
fn articulation_scan(d: &Dense) -> Option<(usize, usize, usize)> {
    let n = d.n();
    let mut best: Option<(usize, usize, usize)> = None;
    for u in 0..n {
        let root = if u == 0 { 1 } else { 0 };
        let r = low_dfs(d, root, u);
        let mut min_sep = vec![NONE; n];
        let mut sep_total = vec![0usize; n];
        let mut root_children = Vec::new();
        for &x in &r.order {
            let p = r.parent[x];
            if p == NONE {
                continue;
            }
            if p == root {
                root_children.push(r.size[x]);
            } else if r.low[x] >= r.disc[p] {
                min_sep[p] = min_sep[p].min(r.size[x]);
                sep_total[p] += r.size[x];
            }
        }
        let mut consider = |v: usize, s: usize| {
            let cand = (s, u.min(v), u.max(v));
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        };
        for v in 0..n {
            if v == u || v == root || min_sep[v] == NONE {
                continue;
            }
            let rest = (n - 2) - sep_total[v];
            consider(v, min_sep[v].min(rest));
        }
        if root_children.len() > 1 {
            let s = *root_children.iter().min().expect("children");
            consider(root, s);
        }
    }
    best
}
