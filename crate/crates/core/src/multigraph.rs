//! Labeled multigraphs with loops and parallel edges.
//!
//! Vertices and edges carry stable integer identities. Surgeries never renumber
//! existing elements, so a vertex of the input graph keeps its label all the way
//! through to the final witness and containment checks reduce to label equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Hands out fresh vertex and edge identities.
///
/// The decision pipeline threads a single allocator through every stage so that
/// artificial vertices, placements and witness edges never collide across the
/// pieces that are later glued back together.
#[derive(Clone, Debug, Default)]
pub struct IdAlloc {
    next_vertex: u32,
    next_edge: u32,
}

impl IdAlloc {
    /// An allocator whose ids are all strictly larger than anything in `g`.
    pub fn after(g: &Multigraph) -> Self {
        let mut alloc = IdAlloc::default();
        alloc.reserve_past(g);
        alloc
    }

    pub fn reserve_past(&mut self, g: &Multigraph) {
        if let Some(v) = g.vertices().next_back() {
            self.next_vertex = self.next_vertex.max(v.0 + 1);
        }
        if let Some(e) = g.edge_ids().next_back() {
            self.next_edge = self.next_edge.max(e.0 + 1);
        }
    }

    pub fn vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        v
    }

    pub fn edge(&mut self) -> EdgeId {
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        e
    }
}

/// An undirected multigraph. A loop contributes two to the degree of its vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    // incidence lists: a loop is listed twice at its vertex
    inc: BTreeMap<VertexId, Vec<EdgeId>>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `(u, v)` pairs; edge `i` gets id `i`.
    pub fn from_edges(pairs: &[(u32, u32)]) -> Self {
        let mut g = Multigraph::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            g.add_vertex(VertexId(a));
            g.add_vertex(VertexId(b));
            g.insert_edge(EdgeId(i as u32), VertexId(a), VertexId(b))
                .expect("fresh edge id");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.inc.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inc.is_empty()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.inc.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.inc.keys().copied().collect()
    }

    pub fn edge_ids(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator + '_ {
        self.edges.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.inc.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    /// The endpoint of `e` opposite to `v` (`v` itself for a loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Edges incident to `v`; a loop appears twice.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.inc.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.inc
            .get(&v)
            .map(Vec::len)
            .ok_or_else(|| Error::precondition(format!("unknown vertex {v}")))
    }

    /// Degree of a vertex known to be present.
    pub fn deg(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.inc.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Distinct neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.incident(v)
            .iter()
            .filter_map(|&e| self.opposite(e, v))
            .filter(|&w| w != v)
            .collect()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.values().any(|&(a, b)| a == b)
    }

    /// Number of edges joining `a` and `b` (loops at `a` when `a == b`).
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        let n = self
            .incident(a)
            .iter()
            .filter(|&&e| self.opposite(e, a) == Some(b))
            .count();
        if a == b {
            n / 2
        } else {
            n
        }
    }

    /// Edges joining `a` and `b`, ascending by id.
    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .incident(a)
            .iter()
            .copied()
            .filter(|&e| self.opposite(e, a) == Some(b))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.inc.contains_key(&v) {
            return false;
        }
        self.inc.insert(v, Vec::new());
        true
    }

    pub fn insert_edge(&mut self, e: EdgeId, a: VertexId, b: VertexId) -> Result<()> {
        if self.edges.contains_key(&e) {
            return Err(Error::precondition(format!("edge {e} already present")));
        }
        if !self.has_vertex(a) || !self.has_vertex(b) {
            return Err(Error::precondition(format!(
                "edge {e} endpoint missing ({a}, {b})"
            )));
        }
        self.edges.insert(e, (a, b));
        self.inc.get_mut(&a).expect("checked").push(e);
        self.inc.get_mut(&b).expect("checked").push(e);
        Ok(())
    }

    pub fn add_edge(&mut self, alloc: &mut IdAlloc, a: VertexId, b: VertexId) -> EdgeId {
        let e = alloc.edge();
        self.insert_edge(e, a, b)
            .expect("allocator yields fresh ids");
        e
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        let (a, b) = self
            .edges
            .remove(&e)
            .ok_or_else(|| Error::precondition(format!("missing edge {e}")))?;
        for v in [a, b] {
            let list = self.inc.get_mut(&v).expect("endpoint present");
            let pos = list.iter().position(|&x| x == e).expect("incidence");
            list.swap_remove(pos);
        }
        Ok((a, b))
    }

    /// Removes `v` together with every incident edge.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let list = self
            .inc
            .get(&v)
            .cloned()
            .ok_or_else(|| Error::precondition(format!("unknown vertex {v}")))?;
        for e in list {
            if self.edges.contains_key(&e) {
                self.remove_edge(e)?;
            }
        }
        self.inc.remove(&v);
        Ok(())
    }

    /// Identifies `b` into `a`. Former `a`–`b` edges become loops at `a`.
    pub fn glue_vertices(&self, a: VertexId, b: VertexId) -> Result<Multigraph> {
        if a == b {
            return Err(Error::precondition("cannot glue a vertex to itself"));
        }
        if !self.has_vertex(a) || !self.has_vertex(b) {
            return Err(Error::precondition(format!(
                "glue of unknown vertex ({a}, {b})"
            )));
        }
        let mut g = Multigraph::new();
        for v in self.vertices().filter(|&v| v != b) {
            g.add_vertex(v);
        }
        let map = |x: VertexId| if x == b { a } else { x };
        for (e, x, y) in self.edges() {
            g.insert_edge(e, map(x), map(y))?;
        }
        Ok(g)
    }

    /// Replaces `e` by a path through `k` fresh degree-two vertices, in order
    /// from the first endpoint of `e`. The fresh vertices are returned.
    pub fn subdivide(&self, e: EdgeId, k: usize) -> Result<(Multigraph, Vec<VertexId>)> {
        let mut alloc = IdAlloc::after(self);
        let mut g = self.clone();
        let fresh = g.subdivide_in_place(&mut alloc, e, k)?.0;
        Ok((g, fresh))
    }

    /// In-place subdivision; returns the fresh vertices and the path edges.
    pub fn subdivide_in_place(
        &mut self,
        alloc: &mut IdAlloc,
        e: EdgeId,
        k: usize,
    ) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
        if k == 0 {
            return Err(Error::precondition("subdivision needs k >= 1"));
        }
        let (a, b) = self.remove_edge(e)?;
        let fresh: Vec<VertexId> = (0..k).map(|_| alloc.vertex()).collect();
        for &v in &fresh {
            self.add_vertex(v);
        }
        let mut path = Vec::with_capacity(k + 1);
        let mut prev = a;
        for &v in fresh.iter().chain(std::iter::once(&b)) {
            path.push(self.add_edge(alloc, prev, v));
            prev = v;
        }
        Ok((fresh, path))
    }

    /// Subgraph induced by `keep`; a loop survives when its vertex does.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Result<Multigraph> {
        if let Some(v) = keep.iter().find(|v| !self.has_vertex(**v)) {
            return Err(Error::precondition(format!(
                "induced on unknown vertex {v}"
            )));
        }
        let mut g = Multigraph::new();
        for &v in keep {
            g.add_vertex(v);
        }
        for (e, a, b) in self.edges() {
            if keep.contains(&a) && keep.contains(&b) {
                g.insert_edge(e, a, b)?;
            }
        }
        Ok(g)
    }

    /// Disjoint-id union: shared vertices are identified, edge ids must not clash.
    pub fn union_with(&mut self, other: &Multigraph) -> Result<()> {
        for v in other.vertices() {
            self.add_vertex(v);
        }
        for (e, a, b) in other.edges() {
            self.insert_edge(e, a, b)?;
        }
        Ok(())
    }

    /// Copy without loops.
    pub fn without_loops(&self) -> Multigraph {
        let mut g = self.clone();
        let loops: Vec<EdgeId> = g
            .edges()
            .filter(|(_, a, b)| a == b)
            .map(|(e, _, _)| e)
            .collect();
        for e in loops {
            g.remove_edge(e).expect("present");
        }
        g
    }

    /// Sorted list of (min, max) endpoint pairs, one entry per edge.
    pub fn endpoint_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|(_, a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        out.sort();
        out
    }

    /// Checks the internal incidence bookkeeping against the edge table.
    pub fn check_consistency(&self) -> bool {
        let total: usize = self.inc.values().map(Vec::len).sum();
        if total != 2 * self.edges.len() {
            return false;
        }
        self.edges.iter().all(|(e, &(a, b))| {
            let ca = self.incident(a).iter().filter(|&&x| x == *e).count();
            let cb = self.incident(b).iter().filter(|&&x| x == *e).count();
            if a == b {
                ca == 2
            } else {
                ca == 1 && cb == 1
            }
        })
    }
}
