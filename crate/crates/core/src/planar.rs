//! Planarity testing and combinatorial embeddings.
//!
//! The simple skeleton is tested and embedded with the left-right criterion;
//! parallel edges and loops are then reinserted next to a sibling dart, which
//! keeps the rotation system planar.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

const NONE: usize = usize::MAX;

/// Beyond this many skeleton edges the obstruction is not minimised.
const KURATOWSKI_MINIMISE_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    First,
    Second,
}

/// One end of an edge. For a loop both darts sit at the same vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Darts of the boundary walk; empty for the face of an isolated vertex.
    pub darts: Vec<Dart>,
    /// Tail vertex of each dart in walk order (the lone vertex for an isolated one).
    pub vertices: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct PlanarEmbedding {
    host: Multigraph,
    edge_ids: Vec<EdgeId>,
    ends: Vec<(VertexId, VertexId)>,
    rotation: BTreeMap<VertexId, Vec<usize>>,
    rot_next: Vec<usize>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
}

// ----------------------------------------------------------------------------
// Left-right planarity on a dense simple graph
// ----------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    ends: &'a [(usize, usize)],
    adj: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    ordered: Vec<Vec<usize>>,
    lowpt_edge: Vec<usize>,
    reference: Vec<usize>,
    side: Vec<i8>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    roots: Vec<usize>,
    // embedding state: rotation over half-edges 2k / 2k+1
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    // per-phase DFS cursors, reset between phases
    ind: Vec<usize>,
    skip_init: Vec<bool>,
}

impl<'a> Lr<'a> {
    fn new(n: usize, ends: &'a [(usize, usize)]) -> Self {
        let m = ends.len();
        let mut adj = vec![Vec::new(); n];
        for (k, &(a, b)) in ends.iter().enumerate() {
            adj[a].push(k);
            adj[b].push(k);
        }
        Lr {
            ends,
            adj,
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            ordered: vec![Vec::new(); n],
            lowpt_edge: vec![NONE; m],
            reference: vec![NONE; m],
            side: vec![1; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
            roots: Vec::new(),
            cw: vec![NONE; 2 * m],
            ccw: vec![NONE; 2 * m],
            first: vec![NONE; n],
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
            ind: vec![0; n],
            skip_init: vec![false; m],
        }
    }

    fn other(&self, k: usize, x: usize) -> usize {
        let (a, b) = self.ends[k];
        if a == x {
            b
        } else {
            a
        }
    }

    fn half(&self, k: usize, x: usize) -> usize {
        2 * k + usize::from(self.ends[k].0 != x)
    }

    /// Runs the test; on success returns the clockwise rotation of skeleton
    /// edge indices around every vertex.
    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.adj.len();
        let m = self.ends.len();
        if n > 2 && m > 3 * n - 6 {
            return None;
        }
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }
        for v in 0..n {
            let mut out = std::mem::take(&mut self.ordered[v]);
            out.sort_by_key(|&k| self.nesting[k]);
            self.ordered[v] = out;
        }
        self.reset_cursors();
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            if !self.dfs_testing(r) {
                return None;
            }
        }
        for k in 0..m {
            let s = self.sign(k);
            self.nesting[k] *= i64::from(s);
        }
        for v in 0..n {
            let mut out = std::mem::take(&mut self.ordered[v]);
            out.sort_by_key(|&k| self.nesting[k]);
            let mut prev = NONE;
            for &k in &out {
                let h = self.half(k, v);
                self.add_cw(v, h, prev);
                prev = h;
            }
            self.ordered[v] = out;
        }
        self.reset_cursors();
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            self.dfs_embedding(r);
        }
        let mut rot = vec![Vec::new(); n];
        for (v, list) in rot.iter_mut().enumerate() {
            let start = self.first[v];
            if start == NONE {
                continue;
            }
            let mut h = start;
            loop {
                list.push(h / 2);
                h = self.cw[h];
                if h == start {
                    break;
                }
            }
        }
        Some(rot)
    }

    fn reset_cursors(&mut self) {
        self.ind.iter_mut().for_each(|x| *x = 0);
        self.skip_init.iter_mut().for_each(|x| *x = false);
    }

    fn dfs_orientation(&mut self, root: usize) {
        let mut ind = std::mem::take(&mut self.ind);
        let mut skip_init = std::mem::take(&mut self.skip_init);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adj[v].len() {
                let k = self.adj[v][ind[v]];
                let w = self.other(k, v);
                if !skip_init[k] {
                    if self.oriented[k] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[k] = true;
                    self.src[k] = v;
                    self.dst[k] = w;
                    self.ordered[v].push(k);
                    self.lowpt[k] = self.height[v];
                    self.lowpt2[k] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = k;
                        self.height[w] = self.height[v] + 1;
                        stack.push(v);
                        stack.push(w);
                        skip_init[k] = true;
                        break;
                    }
                    self.lowpt[k] = self.height[w];
                }
                self.nesting[k] = 2 * self.lowpt[k] as i64;
                if self.lowpt2[k] < self.height[v] {
                    self.nesting[k] += 1;
                }
                if e != NONE {
                    if self.lowpt[k] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[k]);
                        self.lowpt[e] = self.lowpt[k];
                    } else if self.lowpt[k] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[k]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[k]);
                    }
                }
                ind[v] += 1;
            }
        }
        self.ind = ind;
        self.skip_init = skip_init;
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && i.high != NONE && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            self.lowpt[p.right.low]
        } else if p.right.is_empty() {
            self.lowpt[p.left.low]
        } else {
            self.lowpt[p.left.low].min(self.lowpt[p.right.low])
        }
    }

    fn dfs_testing(&mut self, root: usize) -> bool {
        let mut ind = std::mem::take(&mut self.ind);
        let mut skip_init = std::mem::take(&mut self.skip_init);
        let ok = self.dfs_testing_inner(root, &mut ind, &mut skip_init);
        self.ind = ind;
        self.skip_init = skip_init;
        ok
    }

    fn dfs_testing_inner(
        &mut self,
        root: usize,
        ind: &mut [usize],
        skip_init: &mut [bool],
    ) -> bool {
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                let w = self.dst[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if ei == self.parent_edge[w] {
                        stack.push(v);
                        stack.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::EMPTY,
                        right: Interval { low: ei, high: ei },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if ind[v] == 0 {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        loop {
            let Some(mut q) = self.stack.pop() else {
                return false;
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().expect("non-empty");
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr])
                {
                    hl
                } else {
                    hr
                };
            }
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = vec![e];
        let mut cur = e;
        while self.reference[cur] != NONE {
            cur = self.reference[cur];
            chain.push(cur);
        }
        for i in (0..chain.len() - 1).rev() {
            let x = chain[i];
            let y = chain[i + 1];
            self.side[x] *= self.side[y];
            self.reference[x] = NONE;
        }
        self.side[e]
    }

    fn add_cw(&mut self, x: usize, h: usize, reference: usize) {
        if reference == NONE {
            self.cw[h] = h;
            self.ccw[h] = h;
            self.first[x] = h;
            return;
        }
        let next = self.cw[reference];
        self.cw[reference] = h;
        self.ccw[h] = reference;
        self.cw[h] = next;
        self.ccw[next] = h;
    }

    fn add_ccw(&mut self, x: usize, h: usize, reference: usize) {
        if reference == NONE {
            self.add_cw(x, h, NONE);
            return;
        }
        let before = self.ccw[reference];
        self.add_cw(x, h, before);
        if reference == self.first[x] {
            self.first[x] = h;
        }
    }

    fn add_first(&mut self, x: usize, h: usize) {
        let f = self.first[x];
        self.add_ccw(x, h, f);
    }

    fn dfs_embedding(&mut self, root: usize) {
        let mut ind = std::mem::take(&mut self.ind);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                ind[v] += 1;
                let w = self.dst[ei];
                let hw = self.half(ei, w);
                if ei == self.parent_edge[w] {
                    self.add_first(w, hw);
                    let hv = self.half(ei, v);
                    self.left_ref[v] = hv;
                    self.right_ref[v] = hv;
                    stack.push(v);
                    stack.push(w);
                    break;
                }
                if self.side[ei] == 1 {
                    let r = self.right_ref[w];
                    self.add_cw(w, hw, r);
                } else {
                    let l = self.left_ref[w];
                    self.add_ccw(w, hw, l);
                    self.left_ref[w] = hw;
                }
            }
        }
        self.ind = ind;
    }
}

// ----------------------------------------------------------------------------
// Multigraph layer
// ----------------------------------------------------------------------------

struct Skeleton {
    verts: Vec<VertexId>,
    ends: Vec<(usize, usize)>,
    // parallel class of each skeleton edge, ascending ids
    classes: Vec<Vec<EdgeId>>,
    loops: Vec<EdgeId>,
}

fn skeleton(g: &Multigraph) -> Skeleton {
    let verts: Vec<VertexId> = g.vertices().collect();
    let idx = |v: VertexId| verts.binary_search(&v).expect("vertex present");
    let mut pairs: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
    let mut loops = Vec::new();
    for (e, a, b) in g.edges() {
        if a == b {
            loops.push(e);
            continue;
        }
        let (x, y) = (idx(a), idx(b));
        pairs.entry((x.min(y), x.max(y))).or_default().push(e);
    }
    let mut ends = Vec::with_capacity(pairs.len());
    let mut classes = Vec::with_capacity(pairs.len());
    for (k, c) in pairs {
        ends.push(k);
        classes.push(c);
    }
    Skeleton {
        verts,
        ends,
        classes,
        loops,
    }
}

fn lr_rotation(n: usize, ends: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    Lr::new(n, ends).run()
}

/// True iff `g` has a plane drawing. Loops and parallel edges are irrelevant.
pub fn is_planar(g: &Multigraph) -> bool {
    let sk = skeleton(g);
    lr_rotation(sk.verts.len(), &sk.ends).is_some()
}

/// Best-effort obstruction: a subset of edges that is still nonplanar, shrunk
/// by greedy deletion when the graph is small enough.
pub fn kuratowski_edges(g: &Multigraph) -> Option<Vec<EdgeId>> {
    let sk = skeleton(g);
    let n = sk.verts.len();
    if lr_rotation(n, &sk.ends).is_some() {
        return None;
    }
    let mut keep: Vec<usize> = (0..sk.ends.len()).collect();
    if keep.len() <= KURATOWSKI_MINIMISE_LIMIT {
        let mut i = 0;
        while i < keep.len() {
            let trial: Vec<(usize, usize)> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &k)| sk.ends[k])
                .collect();
            if lr_rotation(n, &trial).is_none() {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
    }
    Some(keep.into_iter().map(|k| sk.classes[k][0]).collect())
}

/// Computes a planar rotation system for `g`.
pub fn embed(g: &Multigraph) -> Result<PlanarEmbedding> {
    let sk = skeleton(g);
    let n = sk.verts.len();
    let Some(rot) = lr_rotation(n, &sk.ends) else {
        return Err(Error::NonPlanar {
            obstruction: kuratowski_edges(g).unwrap_or_default(),
        });
    };

    let edge_ids: Vec<EdgeId> = g.edge_ids().collect();
    let ends: Vec<(VertexId, VertexId)> = g.edges().map(|(_, a, b)| (a, b)).collect();
    let eidx = |e: EdgeId| edge_ids.binary_search(&e).expect("edge present");
    let dart_at = |e: EdgeId, v: VertexId| {
        let i = eidx(e);
        2 * i + usize::from(ends[i].0 != v)
    };

    let mut rotation: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (x, list) in rot.iter().enumerate() {
        let vx = sk.verts[x];
        let mut darts = Vec::new();
        for &k in list {
            let class = &sk.classes[k];
            // the lower endpoint sees the class in order, the other in reverse
            if sk.ends[k].0 == x {
                darts.extend(class.iter().map(|&e| dart_at(e, vx)));
            } else {
                darts.extend(class.iter().rev().map(|&e| dart_at(e, vx)));
            }
        }
        rotation.insert(vx, darts);
    }
    for &e in &sk.loops {
        let i = eidx(e);
        let v = ends[i].0;
        let list = rotation.get_mut(&v).expect("loop vertex");
        list.push(2 * i);
        list.push(2 * i + 1);
    }

    let mut rot_next = vec![NONE; 2 * edge_ids.len()];
    for list in rotation.values() {
        for (j, &d) in list.iter().enumerate() {
            rot_next[d] = list[(j + 1) % list.len()];
        }
    }

    let mut emb = PlanarEmbedding {
        host: g.clone(),
        edge_ids,
        ends,
        rotation,
        rot_next,
        faces: Vec::new(),
        face_of: Vec::new(),
    };
    emb.trace_faces();
    if !emb.check_euler() {
        return Err(Error::internal("embedding violates Euler's formula"));
    }
    Ok(emb)
}

impl PlanarEmbedding {
    fn trace_faces(&mut self) {
        let nd = self.rot_next.len();
        let mut face_of = vec![NONE; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != NONE {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut verts = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                darts.push(self.dart(d));
                verts.push(self.tail(d));
                d = self.rot_next[d ^ 1];
                if d == start {
                    break;
                }
            }
            faces.push(Face {
                darts,
                vertices: verts,
            });
        }
        for (&v, list) in &self.rotation {
            if list.is_empty() {
                faces.push(Face {
                    darts: Vec::new(),
                    vertices: vec![v],
                });
            }
        }
        self.faces = faces;
        self.face_of = face_of;
    }

    fn dart(&self, d: usize) -> Dart {
        Dart {
            edge: self.edge_ids[d / 2],
            side: if d.is_multiple_of(2) {
                Side::First
            } else {
                Side::Second
            },
        }
    }

    fn tail(&self, d: usize) -> VertexId {
        let (a, b) = self.ends[d / 2];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn dart_index(&self, d: Dart) -> Option<usize> {
        let i = self.edge_ids.binary_search(&d.edge).ok()?;
        Some(2 * i + usize::from(d.side == Side::Second))
    }

    pub fn host(&self) -> &Multigraph {
        &self.host
    }

    /// Tail vertex of a dart.
    pub fn dart_vertex(&self, d: Dart) -> Option<VertexId> {
        self.dart_index(d).map(|i| self.tail(i))
    }

    /// Cyclic order of darts around `v`.
    pub fn rotation(&self, v: VertexId) -> Vec<Dart> {
        self.rotation
            .get(&v)
            .map(|l| l.iter().map(|&d| self.dart(d)).collect())
            .unwrap_or_default()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Index of the face whose walk contains `d`.
    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.dart_index(d).map(|i| self.face_of[i])
    }

    /// Checks n - m + f = 2 on every connected component.
    pub fn check_euler(&self) -> bool {
        let verts: Vec<VertexId> = self.host.vertices().collect();
        let idx = |v: VertexId| verts.binary_search(&v).expect("vertex");
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.ends {
            let (x, y) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
            parent[x] = y;
        }
        let mut tally: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
        for v in &verts {
            let r = find(&mut parent, idx(*v));
            tally.entry(r).or_default().0 += 1;
        }
        for &(a, _) in &self.ends {
            let r = find(&mut parent, idx(a));
            tally.entry(r).or_default().1 += 1;
        }
        for face in &self.faces {
            let r = find(&mut parent, idx(face.vertices[0]));
            tally.entry(r).or_default().2 += 1;
        }
        // every dart must sit in exactly one face
        let total: usize = self.faces.iter().map(|f| f.darts.len()).sum();
        total == self.rot_next.len() && tally.values().all(|&(n, m, f)| n - m + f == 2)
    }

    /// Unordered pairs (v <= w) of vertices sharing a face, including {v, v}.
    pub fn co_face_relation(&self) -> BTreeSet<(VertexId, VertexId)> {
        co_face_relation(self)
    }

    /// Distinct vertices of each face, ascending.
    pub fn face_vertex_sets(&self) -> Vec<Vec<VertexId>> {
        self.faces
            .iter()
            .map(|f| {
                let s: BTreeSet<VertexId> = f.vertices.iter().copied().collect();
                s.into_iter().collect()
            })
            .collect()
    }
}

pub fn co_face_relation(emb: &PlanarEmbedding) -> BTreeSet<(VertexId, VertexId)> {
    let mut out = BTreeSet::new();
    for s in emb.face_vertex_sets() {
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i..] {
                out.insert((a, b));
            }
        }
    }
    out
}
