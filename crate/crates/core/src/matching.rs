//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

const NONE: usize = usize::MAX;

/// Simple undirected graph on `0..n` with sorted adjacency.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Adds `a`-`b`; rejects loops, duplicates are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::precondition("matching graph must be loopless"));
        }
        if a >= self.adj.len() || b >= self.adj.len() {
            return Err(Error::precondition("matching edge out of range"));
        }
        for (x, y) in [(a, b), (b, a)] {
            if let Err(pos) = self.adj[x].binary_search(&y) {
                self.adj[x].insert(pos, y);
            }
        }
        Ok(())
    }

    /// Dense copy of a loopless multigraph (vertex i = i-th smallest id).
    pub fn from_multigraph(g: &Multigraph) -> Result<Self> {
        if g.has_loops() {
            return Err(Error::precondition("matching graph must be loopless"));
        }
        let verts: Vec<_> = g.vertices().collect();
        let mut s = SimpleGraph::new(verts.len());
        for (_, a, b) in g.edges() {
            let x = verts.binary_search(&a).expect("vertex");
            let y = verts.binary_search(&b).expect("vertex");
            s.add_edge(x, y)?;
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    /// Matched pairs `(a, b)` with `a < b`, ascending.
    pub pairs: Vec<(usize, usize)>,
    pub is_perfect: bool,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj[v].len() {
                let to = self.g.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }
}

/// Maximum matching; vertices are processed in ascending order, so the result
/// is a deterministic function of the graph.
pub fn maximum_matching(g: &SimpleGraph) -> MatchingResult {
    let n = g.vertex_count();
    let mut b = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
        lca_mark: vec![false; n],
        queue: VecDeque::new(),
    };
    // greedy start
    for v in 0..n {
        if b.mate[v] != NONE {
            continue;
        }
        if let Some(&w) = g.adj[v].iter().find(|&&w| b.mate[w] == NONE) {
            b.mate[v] = w;
            b.mate[w] = v;
        }
    }
    for v in 0..n {
        if b.mate[v] != NONE {
            continue;
        }
        let mut u = b.find_path(v);
        while u != NONE {
            let pv = b.parent[u];
            let ppv = b.mate[pv];
            b.mate[u] = pv;
            b.mate[pv] = u;
            u = ppv;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&v| b.mate[v] != NONE && v < b.mate[v])
        .map(|v| (v, b.mate[v]))
        .collect();
    let is_perfect = 2 * pairs.len() == n;
    MatchingResult { pairs, is_perfect }
}

/// Checks that `m` is a matching of `g` (disjoint pairs along edges).
pub fn is_valid_matching(g: &SimpleGraph, m: &MatchingResult) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    for &(a, b) in &m.pairs {
        if a >= seen.len() || b >= seen.len() || seen[a] || seen[b] || !g.has_edge(a, b) {
            return false;
        }
        seen[a] = true;
        seen[b] = true;
    }
    m.is_perfect == (2 * m.pairs.len() == g.vertex_count())
}
