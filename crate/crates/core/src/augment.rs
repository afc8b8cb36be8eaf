//! Discrepancy functions, blue/red augmentations and the auxiliary graph.
//!
//! An [`Augmentation`] pairs a blue multigraph with a red one obtained by placing
//! at most one gadget on each blue edge. Edges of kind A are shared verbatim
//! (same id in blue and red); every other kind replaces the blue edge by fresh
//! red vertices and edges recorded in a [`CorrEntry`].

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::matching::SimpleGraph;
use crate::multigraph::{EdgeId, IdAlloc, Multigraph, VertexId};
use crate::planar::PlanarEmbedding;

/// Per-vertex count of edge ends still to be added. Absent vertices read as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscrepancyFn(BTreeMap<VertexId, u8>);

impl DiscrepancyFn {
    pub fn new() -> Self {
        DiscrepancyFn(BTreeMap::new())
    }

    /// `4 - deg` at every vertex of `g`.
    pub fn from_deficit(g: &Multigraph) -> Result<Self> {
        let mut f = DiscrepancyFn::new();
        for v in g.vertices() {
            let d = g.deg(v);
            if d > 4 {
                return Err(Error::Discrepancy(format!("vertex {v} has degree {d} > 4")));
            }
            f.set(v, (4 - d) as u8);
        }
        Ok(f)
    }

    pub fn get(&self, v: VertexId) -> u8 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VertexId, value: u8) {
        if value == 0 {
            self.0.remove(&v);
        } else {
            self.0.insert(v, value);
        }
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0.remove(&v);
    }

    /// Vertices with positive value, ascending.
    pub fn support(&self) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.0.iter().map(|(&v, &x)| (v, x))
    }

    pub fn sum(&self) -> usize {
        self.0.values().map(|&x| x as usize).sum()
    }

    pub fn is_even(&self) -> bool {
        self.sum().is_multiple_of(2)
    }

    /// Restriction to `keep`.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Self {
        DiscrepancyFn(
            self.0
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, &x)| (v, x))
                .collect(),
        )
    }

    pub fn sum_over<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> usize {
        vs.into_iter().map(|&v| self.get(v) as usize).sum()
    }

    /// Checks the inequality `f <= 4 - deg` on `g`, parity, and that `f` lives on `V(g)`.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        for (&v, &x) in &self.0 {
            if !g.has_vertex(v) {
                return Err(Error::Discrepancy(format!("vertex {v} not in graph")));
            }
            if g.deg(v) + x as usize > 4 {
                return Err(Error::Discrepancy(format!(
                    "f({v}) = {x} exceeds 4 - deg = {}",
                    4usize.saturating_sub(g.deg(v))
                )));
            }
        }
        if !self.is_even() {
            return Err(Error::Discrepancy(format!("odd total {}", self.sum())));
        }
        Ok(())
    }
}

impl FromIterator<(VertexId, u8)> for DiscrepancyFn {
    fn from_iter<I: IntoIterator<Item = (VertexId, u8)>>(iter: I) -> Self {
        let mut f = DiscrepancyFn::new();
        for (v, x) in iter {
            f.set(v, x);
        }
        f
    }
}

/// A graph together with the degrees it still needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyPair {
    pub graph: Multigraph,
    pub f: DiscrepancyFn,
}

impl DiscrepancyPair {
    pub fn new(graph: Multigraph, f: DiscrepancyFn) -> Result<Self> {
        f.validate(&graph)?;
        Ok(DiscrepancyPair { graph, f })
    }

    /// `(H, 4 - deg_H)`.
    pub fn deficit(graph: Multigraph) -> Result<Self> {
        let f = DiscrepancyFn::from_deficit(&graph)?;
        DiscrepancyPair::new(graph, f)
    }

    pub fn target_degree(&self, v: VertexId) -> usize {
        self.graph.deg(v) + self.f.get(v) as usize
    }

    /// True iff `g` contains `self.graph` label-wise and has the target degrees
    /// on exactly the same vertex set. Planarity is not checked here.
    pub fn is_satisfied_by_degrees(&self, g: &Multigraph) -> bool {
        g.vertex_count() == self.graph.vertex_count()
            && self
                .graph
                .vertices()
                .all(|v| g.has_vertex(v) && g.deg(v) == self.target_degree(v))
            && self.graph.edges().all(|(e, a, b)| {
                g.endpoints(e)
                    .is_some_and(|(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeAugKind {
    /// The edge itself.
    A,
    /// One subdivision vertex with f = 1.
    B,
    /// One subdivision vertex with f = 2.
    C,
    /// Spine p, q, r (f = 0) and apexes s, t (f = 1) adjacent to the spine.
    D,
}

/// Red realisation of one blue edge.
///
/// * A: `vertices` empty, `edges = [e]` with `e` the blue id.
/// * B, C: `vertices = [w]`, `edges = [x-w, w-y]`.
/// * D: `vertices = [p, q, r, s, t]`, `edges = [x-p, p-q, q-r, r-y, s-p, s-q, s-r, t-p, t-q, t-r]`.
///
/// Here `x, y` are the blue endpoints in stored order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrEntry {
    pub kind: EdgeAugKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl CorrEntry {
    fn plain(e: EdgeId) -> Self {
        CorrEntry {
            kind: EdgeAugKind::A,
            vertices: Vec::new(),
            edges: vec![e],
        }
    }

    /// Apex vertices of a diamond.
    pub fn apexes(&self) -> Option<(VertexId, VertexId)> {
        (self.kind == EdgeAugKind::D).then(|| (self.vertices[3], self.vertices[4]))
    }
}

/// Writes the red realisation of `kind` on `x`-`y` into `red`, returning the record.
fn realise(
    red: &mut DiscrepancyPair,
    alloc: &mut IdAlloc,
    x: VertexId,
    y: VertexId,
    kind: EdgeAugKind,
) -> CorrEntry {
    let g = &mut red.graph;
    match kind {
        EdgeAugKind::A => {
            let e = g.add_edge(alloc, x, y);
            CorrEntry::plain(e)
        }
        EdgeAugKind::B | EdgeAugKind::C => {
            let w = alloc.vertex();
            g.add_vertex(w);
            let e1 = g.add_edge(alloc, x, w);
            let e2 = g.add_edge(alloc, w, y);
            red.f.set(w, if kind == EdgeAugKind::B { 1 } else { 2 });
            CorrEntry {
                kind,
                vertices: vec![w],
                edges: vec![e1, e2],
            }
        }
        EdgeAugKind::D => {
            let vs: Vec<VertexId> = (0..5).map(|_| alloc.vertex()).collect();
            let (p, q, r, s, t) = (vs[0], vs[1], vs[2], vs[3], vs[4]);
            for &v in &vs {
                g.add_vertex(v);
            }
            let mut edges = Vec::with_capacity(10);
            for (a, b) in [
                (x, p),
                (p, q),
                (q, r),
                (r, y),
                (s, p),
                (s, q),
                (s, r),
                (t, p),
                (t, q),
                (t, r),
            ] {
                edges.push(g.add_edge(alloc, a, b));
            }
            red.f.set(s, 1);
            red.f.set(t, 1);
            CorrEntry {
                kind,
                vertices: vs,
                edges,
            }
        }
    }
}

/// Removes the red realisation recorded in `entry` (endpoints stay).
fn unrealise(red: &mut DiscrepancyPair, entry: &CorrEntry) -> Result<()> {
    for &e in &entry.edges {
        red.graph.remove_edge(e)?;
    }
    for &v in &entry.vertices {
        red.graph.remove_vertex(v)?;
        red.f.remove(v);
    }
    Ok(())
}

/// Blue graph, red graph with discrepancy, and the per-edge correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub blue: Multigraph,
    pub red: DiscrepancyPair,
    pub corr: BTreeMap<EdgeId, CorrEntry>,
}

impl Augmentation {
    /// Identity augmentation: red = blue, every edge of kind A.
    pub fn make_initial(c: Multigraph, f: DiscrepancyFn) -> Result<Self> {
        let red = DiscrepancyPair::new(c.clone(), f)?;
        let corr = c.edge_ids().map(|e| (e, CorrEntry::plain(e))).collect();
        Ok(Augmentation { blue: c, red, corr })
    }

    pub fn kind(&self, e: EdgeId) -> Option<EdgeAugKind> {
        self.corr.get(&e).map(|c| c.kind)
    }

    /// Replaces the plain realisation of `e` by `kind`.
    pub fn place(&mut self, e: EdgeId, kind: EdgeAugKind, alloc: &mut IdAlloc) -> Result<()> {
        let entry = self
            .corr
            .get(&e)
            .ok_or_else(|| Error::precondition(format!("{e} is not a blue edge")))?;
        if entry.kind != EdgeAugKind::A {
            return Err(Error::precondition(format!(
                "{e} already carries a placement"
            )));
        }
        if kind == EdgeAugKind::A {
            return Ok(());
        }
        let (x, y) = self.blue.endpoints(e).expect("blue edge");
        if x == y {
            return Err(Error::precondition("cannot place on a loop"));
        }
        self.red.graph.remove_edge(e)?;
        let entry = realise(&mut self.red, alloc, x, y, kind);
        self.corr.insert(e, entry);
        Ok(())
    }

    /// Adds a fresh blue edge `x`-`y` realised as `kind`; returns its id.
    pub fn add_blue_edge(
        &mut self,
        alloc: &mut IdAlloc,
        x: VertexId,
        y: VertexId,
        kind: EdgeAugKind,
    ) -> EdgeId {
        let e = self.blue.add_edge(alloc, x, y);
        let entry = if kind == EdgeAugKind::A {
            self.red.graph.insert_edge(e, x, y).expect("fresh id");
            CorrEntry::plain(e)
        } else {
            realise(&mut self.red, alloc, x, y, kind)
        };
        self.corr.insert(e, entry);
        e
    }

    /// Deletes a blue edge together with its red realisation.
    pub fn remove_blue_edge(&mut self, e: EdgeId) -> Result<()> {
        let entry = self
            .corr
            .remove(&e)
            .ok_or_else(|| Error::precondition(format!("{e} is not a blue edge")))?;
        self.blue.remove_edge(e)?;
        unrealise(&mut self.red, &entry)
    }

    /// Deletes a blue vertex that has no blue edges left.
    pub fn remove_blue_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.blue.deg(v) != 0 {
            return Err(Error::precondition(format!(
                "blue vertex {v} still has edges"
            )));
        }
        self.blue.remove_vertex(v)?;
        self.red.graph.remove_vertex(v)?;
        self.red.f.remove(v);
        Ok(())
    }

    /// Sub-augmentation on the blue edges `edges` and blue vertices `verts`
    /// (which must contain every endpoint). Discrepancy values are copied.
    pub fn restrict(&self, verts: &BTreeSet<VertexId>, edges: &BTreeSet<EdgeId>) -> Result<Self> {
        let mut blue = Multigraph::new();
        let mut red = Multigraph::new();
        for &v in verts {
            blue.add_vertex(v);
            red.add_vertex(v);
        }
        let mut corr = BTreeMap::new();
        for &e in edges {
            let (a, b) = self
                .blue
                .endpoints(e)
                .ok_or_else(|| Error::internal(format!("{e} missing from blue graph")))?;
            if !verts.contains(&a) || !verts.contains(&b) {
                return Err(Error::internal("restriction drops an endpoint"));
            }
            blue.insert_edge(e, a, b)?;
            let entry = &self.corr[&e];
            for &w in &entry.vertices {
                red.add_vertex(w);
            }
            for &re in &entry.edges {
                let (x, y) = self.red.graph.endpoints(re).expect("red edge");
                red.insert_edge(re, x, y)?;
            }
            corr.insert(e, entry.clone());
        }
        let f = self.red.f.restrict(&red.vertex_set());
        Ok(Augmentation {
            blue,
            red: DiscrepancyPair { graph: red, f },
            corr,
        })
    }

    /// Rebuilds the red graph from `blue` and `corr` and compares.
    pub fn check_replay(&self) -> bool {
        let mut red = Multigraph::new();
        for v in self.blue.vertices() {
            red.add_vertex(v);
        }
        if self.corr.len() != self.blue.edge_count() {
            return false;
        }
        for (e, x, y) in self.blue.edges() {
            let Some(entry) = self.corr.get(&e) else {
                return false;
            };
            let shape: Vec<(VertexId, VertexId)> = match entry.kind {
                EdgeAugKind::A => {
                    if entry.edges != [e] || !entry.vertices.is_empty() {
                        return false;
                    }
                    vec![(x, y)]
                }
                EdgeAugKind::B | EdgeAugKind::C => {
                    if entry.vertices.len() != 1 || entry.edges.len() != 2 {
                        return false;
                    }
                    let w = entry.vertices[0];
                    let want = if entry.kind == EdgeAugKind::B { 1 } else { 2 };
                    if self.red.f.get(w) != want {
                        return false;
                    }
                    vec![(x, w), (w, y)]
                }
                EdgeAugKind::D => {
                    if entry.vertices.len() != 5 || entry.edges.len() != 10 {
                        return false;
                    }
                    let v = &entry.vertices;
                    let (p, q, r, s, t) = (v[0], v[1], v[2], v[3], v[4]);
                    let fs = [0, 0, 0, 1, 1];
                    if v.iter().zip(fs).any(|(&w, want)| self.red.f.get(w) != want) {
                        return false;
                    }
                    vec![
                        (x, p),
                        (p, q),
                        (q, r),
                        (r, y),
                        (s, p),
                        (s, q),
                        (s, r),
                        (t, p),
                        (t, q),
                        (t, r),
                    ]
                }
            };
            for &w in &entry.vertices {
                red.add_vertex(w);
            }
            for (&re, (a, b)) in entry.edges.iter().zip(shape) {
                if red.insert_edge(re, a, b).is_err() {
                    return false;
                }
            }
        }
        red.vertex_set() == self.red.graph.vertex_set() && red.edges().eq(self.red.graph.edges())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionRule {
    /// A + B: drop A.
    I,
    /// A + C: drop C.
    II,
    /// B + C: drop C.
    III,
    /// B + D: drop D.
    IV,
    /// C + D: drop C.
    V,
}

/// One applied double-edge rule, with enough data to reinstate the dropped part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub ends: (VertexId, VertexId),
    pub kept: CorrEntry,
    pub dropped: CorrEntry,
    /// Blue endpoint order of the dropped edge.
    pub dropped_ends: (VertexId, VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// A double edge of kinds A and D.
    Unsatisfiable { edges: (EdgeId, EdgeId) },
    Reduced {
        red: DiscrepancyPair,
        log: Vec<ReductionStep>,
    },
}

/// True iff every blue double edge has multiplicity exactly 2 and both
/// endpoints have `f = 0`.
pub fn endpoints_zero_check(aug: &Augmentation) -> bool {
    aug.blue.edges().all(|(_, a, b)| {
        let m = aug.blue.multiplicity(a, b);
        a != b && (m == 1 || (m == 2 && aug.red.f.get(a) == 0 && aug.red.f.get(b) == 0))
    })
}

/// Applies the double-edge deletion rules to every mixed-kind blue double edge.
pub fn reduce_double_edges(aug: &Augmentation) -> Result<Reduction> {
    if aug.blue.has_loops() {
        return Err(Error::precondition("blue graph has loops"));
    }
    if aug.blue.max_degree() > 4 {
        return Err(Error::precondition("blue graph has a vertex of degree > 4"));
    }
    let mut seen = BTreeSet::new();
    let mut red = aug.red.clone();
    let mut log = Vec::new();
    for (e, a, b) in aug.blue.edges() {
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            continue;
        }
        let par = aug.blue.edges_between(a, b);
        match par.len() {
            1 => continue,
            2 => {}
            m => {
                return Err(Error::precondition(format!(
                    "{m} parallel edges between {a} and {b}"
                )))
            }
        }
        debug_assert_eq!(par[0], e);
        let (e1, e2) = (par[0], par[1]);
        let (k1, k2) = (aug.corr[&e1].kind, aug.corr[&e2].kind);
        if k1 == k2 {
            continue;
        }
        let (lo, hi) = if k1 < k2 { (e1, e2) } else { (e2, e1) };
        use EdgeAugKind::*;
        let (rule, kept, dropped) = match (aug.corr[&lo].kind, aug.corr[&hi].kind) {
            (A, D) => return Ok(Reduction::Unsatisfiable { edges: (lo, hi) }),
            (A, B) => (ReductionRule::I, hi, lo),
            (A, C) => (ReductionRule::II, lo, hi),
            (B, C) => (ReductionRule::III, lo, hi),
            (B, D) => (ReductionRule::IV, lo, hi),
            (C, D) => (ReductionRule::V, hi, lo),
            _ => unreachable!("kinds ordered and distinct"),
        };
        let dropped_entry = aug.corr[&dropped].clone();
        unrealise(&mut red, &dropped_entry)?;
        log.push(ReductionStep {
            rule,
            ends: key,
            kept: aug.corr[&kept].clone(),
            dropped: dropped_entry,
            dropped_ends: aug.blue.endpoints(dropped).expect("blue edge"),
        });
    }
    Ok(Reduction::Reduced { red, log })
}

/// Copy graph: `f(v)` copies of each vertex; two copies are adjacent iff they are
/// distinct and their originals share a face of `emb`. Returns the graph and the
/// original vertex of each copy.
pub fn build_auxiliary(
    rp: &DiscrepancyPair,
    emb: &PlanarEmbedding,
) -> Result<(SimpleGraph, Vec<VertexId>)> {
    let mut copies: Vec<VertexId> = Vec::new();
    let mut first: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
    for (v, x) in rp.f.support() {
        if !rp.graph.has_vertex(v) {
            return Err(Error::precondition(format!("f mentions absent vertex {v}")));
        }
        first.insert(v, (copies.len(), x as usize));
        copies.extend(std::iter::repeat_n(v, x as usize));
    }
    let mut aux = SimpleGraph::new(copies.len());
    let mut linked: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (v, &(start, k)) in &first {
        for i in 0..k {
            for j in i + 1..k {
                aux.add_edge(start + i, start + j)?;
            }
        }
        linked.insert((*v, *v));
    }
    for face in emb.faces() {
        let on: BTreeSet<VertexId> = face
            .vertices
            .iter()
            .copied()
            .filter(|v| first.contains_key(v))
            .collect();
        let on: Vec<VertexId> = on.into_iter().collect();
        for (i, &a) in on.iter().enumerate() {
            for &b in &on[i + 1..] {
                if !linked.insert((a, b)) {
                    continue;
                }
                let (sa, ka) = first[&a];
                let (sb, kb) = first[&b];
                for x in sa..sa + ka {
                    for y in sb..sb + kb {
                        aux.add_edge(x, y)?;
                    }
                }
            }
        }
    }
    Ok((aux, copies))
}
