//! Explicit satisfying graphs: construction from matchings, undoing the
//! double-edge reduction, the gluing steps that reverse every split, and
//! independent verification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::augment::{CorrEntry, DiscrepancyPair, EdgeAugKind, ReductionRule, ReductionStep};
use crate::error::{Error, Result};
use crate::matching::MatchingResult;
use crate::multigraph::{EdgeId, IdAlloc, Multigraph, VertexId};
use crate::planar::{is_planar, PlanarEmbedding};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    NotPlanar,
    WrongDegree {
        vertex: VertexId,
        degree: usize,
        expected: usize,
    },
    MissingEdge(EdgeId),
    MissingVertex(VertexId),
    /// A vertex outside `V(h)` in multigraph mode.
    ExtraVertex(VertexId),
    Loop(EdgeId),
    ParallelEdge(EdgeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPlanar => write!(f, "graph is not planar"),
            Violation::WrongDegree {
                vertex,
                degree,
                expected,
            } => write!(
                f,
                "vertex {vertex} has degree {degree}, expected {expected}"
            ),
            Violation::MissingEdge(e) => write!(f, "edge {e} missing or has different endpoints"),
            Violation::MissingVertex(v) => write!(f, "vertex {v} missing"),
            Violation::ExtraVertex(v) => write!(f, "vertex {v} is not in the input graph"),
            Violation::Loop(e) => write!(f, "edge {e} is a loop"),
            Violation::ParallelEdge(e) => write!(f, "edge {e} is parallel to another edge"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Loops and parallels allowed, `V(g) = V(h)`.
    Multigraph,
    /// No loops or parallels, `V(g) ⊇ V(h)`.
    Simple,
}

fn containment(g: &Multigraph, h: &Multigraph, out: &mut Vec<Violation>) {
    for v in h.vertices() {
        if !g.has_vertex(v) {
            out.push(Violation::MissingVertex(v));
        }
    }
    for (e, a, b) in h.edges() {
        match g.endpoints(e) {
            Some((x, y)) if (x, y) == (a, b) || (y, x) == (a, b) => {}
            _ => out.push(Violation::MissingEdge(e)),
        }
    }
}

/// Checks that `g` is a 4-regular planar supergraph of `h` under label identity.
pub fn verify(g: &Multigraph, h: &Multigraph, mode: VerifyMode) -> Vec<Violation> {
    let mut out = Vec::new();
    if !is_planar(g) {
        out.push(Violation::NotPlanar);
    }
    for v in g.vertices() {
        if g.deg(v) != 4 {
            out.push(Violation::WrongDegree {
                vertex: v,
                degree: g.deg(v),
                expected: 4,
            });
        }
    }
    containment(g, h, &mut out);
    match mode {
        VerifyMode::Multigraph => {
            out.extend(
                g.vertices()
                    .filter(|&v| !h.has_vertex(v))
                    .map(Violation::ExtraVertex),
            );
        }
        VerifyMode::Simple => {
            let mut seen = BTreeSet::new();
            for (e, a, b) in g.edges() {
                if a == b {
                    out.push(Violation::Loop(e));
                } else if !seen.insert((a.min(b), a.max(b))) {
                    out.push(Violation::ParallelEdge(e));
                }
            }
        }
    }
    out
}

/// Checks that `g` satisfies the pair: planar, same vertices, contains the
/// graph, and has degree `deg + f` everywhere.
pub fn verify_pair(g: &Multigraph, rp: &DiscrepancyPair) -> Vec<Violation> {
    let mut out = Vec::new();
    if !is_planar(g) {
        out.push(Violation::NotPlanar);
    }
    containment(g, &rp.graph, &mut out);
    for v in g.vertices() {
        if !rp.graph.has_vertex(v) {
            out.push(Violation::ExtraVertex(v));
        } else if g.deg(v) != rp.target_degree(v) {
            out.push(Violation::WrongDegree {
                vertex: v,
                degree: g.deg(v),
                expected: rp.target_degree(v),
            });
        }
    }
    out
}

pub(crate) fn ensure_pair(g: &Multigraph, rp: &DiscrepancyPair, what: &str) -> Result<()> {
    let bad = verify_pair(g, rp);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::internal(format!("{what}: {}", bad[0])))
    }
}

/// Incident edges of `v` outside `own`, each listed once.
fn extra_edges(m: &Multigraph, v: VertexId, own: &[EdgeId]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = m
        .incident(v)
        .iter()
        .copied()
        .filter(|e| !own.contains(e))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Inserts one new edge per matched pair, rerouted so chords inside a face
/// never cross: slots in a face are sorted along the boundary walk and joined
/// consecutively.
pub fn satisfy_by_matching(
    rp: &DiscrepancyPair,
    emb: &PlanarEmbedding,
    matching: &MatchingResult,
    copies: &[VertexId],
    alloc: &mut IdAlloc,
) -> Result<Multigraph> {
    if 2 * matching.pairs.len() != copies.len() {
        return Err(Error::precondition("matching is not perfect"));
    }
    let mut faces_at: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (fi, face) in emb.faces().iter().enumerate() {
        for &v in &face.vertices {
            let list = faces_at.entry(v).or_default();
            if list.last() != Some(&fi) {
                list.push(fi);
            }
        }
    }
    let empty = Vec::new();
    // face -> (position, sequence, vertex)
    let mut slots: BTreeMap<usize, Vec<(usize, usize, VertexId)>> = BTreeMap::new();
    let mut first_pos: BTreeMap<usize, BTreeMap<VertexId, usize>> = BTreeMap::new();
    let mut seq = 0;
    for &(i, j) in &matching.pairs {
        let (a, b) = (copies[i], copies[j]);
        let fa = faces_at.get(&a).unwrap_or(&empty);
        let fb = faces_at.get(&b).unwrap_or(&empty);
        let common = fa
            .iter()
            .find(|x| fb.binary_search(x).is_ok())
            .copied()
            .ok_or_else(|| Error::internal(format!("matched {a} and {b} share no face")))?;
        let pos = first_pos.entry(common).or_insert_with(|| {
            let mut m = BTreeMap::new();
            for (k, &v) in emb.faces()[common].vertices.iter().enumerate() {
                m.entry(v).or_insert(k);
            }
            m
        });
        let list = slots.entry(common).or_default();
        for x in [a, b] {
            list.push((pos[&x], seq, x));
            seq += 1;
        }
    }
    let mut g = rp.graph.clone();
    alloc.reserve_past(&g);
    for (_, mut list) in slots {
        list.sort();
        for pair in list.chunks(2) {
            g.add_edge(alloc, pair[0].2, pair[1].2);
        }
    }
    Ok(g)
}

fn reinsert(m: &mut Multigraph, entry: &CorrEntry, x: VertexId, y: VertexId) -> Result<()> {
    let v = &entry.vertices;
    let shape: Vec<(VertexId, VertexId)> = match entry.kind {
        EdgeAugKind::A => vec![(x, y)],
        EdgeAugKind::B | EdgeAugKind::C => vec![(x, v[0]), (v[0], y)],
        EdgeAugKind::D => {
            let (p, q, r, s, t) = (v[0], v[1], v[2], v[3], v[4]);
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
    for &w in v {
        m.add_vertex(w);
    }
    for (&e, (a, b)) in entry.edges.iter().zip(shape) {
        m.insert_edge(e, a, b)?;
    }
    Ok(())
}

/// Reinstates the parts removed by the double-edge rules, last rule first.
pub fn undo_reduction(
    m: Multigraph,
    log: &[ReductionStep],
    alloc: &mut IdAlloc,
) -> Result<Multigraph> {
    let mut m = m;
    alloc.reserve_past(&m);
    for step in log.iter().rev() {
        let (x, y) = step.dropped_ends;
        match step.rule {
            ReductionRule::I => reinsert(&mut m, &step.dropped, x, y)?,
            ReductionRule::II | ReductionRule::III => {
                reinsert(&mut m, &step.dropped, x, y)?;
                let c = step.dropped.vertices[0];
                m.add_edge(alloc, c, c);
            }
            ReductionRule::IV => {
                // the kept midpoint w gives up its added edge w-z; the diamond
                // returns beside the path with apexes wired to w and z
                let w = step.kept.vertices[0];
                let extra = extra_edges(&m, w, &step.kept.edges);
                let [ez] = extra[..] else {
                    return Err(Error::internal(
                        "type B midpoint without exactly one added edge",
                    ));
                };
                let z = m.opposite(ez, w).expect("incident");
                m.remove_edge(ez)?;
                reinsert(&mut m, &step.dropped, x, y)?;
                let (s, t) = step.dropped.apexes().expect("diamond");
                m.add_edge(alloc, w, s);
                m.add_edge(alloc, t, z);
            }
            ReductionRule::V => {
                let c = step.dropped.vertices[0];
                let (s, t) = step.kept.apexes().expect("diamond");
                let mut done = false;
                for apex in [s, t] {
                    let extra = extra_edges(&m, apex, &step.kept.edges);
                    let [ea] = extra[..] else {
                        return Err(Error::internal("apex without exactly one added edge"));
                    };
                    let a = m.opposite(ea, apex).expect("incident");
                    let mut trial = m.clone();
                    trial.remove_edge(ea)?;
                    reinsert(&mut trial, &step.dropped, x, y)?;
                    trial.add_edge(alloc, c, apex);
                    trial.add_edge(alloc, c, a);
                    if is_planar(&trial) {
                        m = trial;
                        done = true;
                        break;
                    }
                }
                if !done {
                    let mut trial = m.clone();
                    reinsert(&mut trial, &step.dropped, x, y)?;
                    trial.add_edge(alloc, c, c);
                    if !is_planar(&trial) {
                        return Err(Error::internal(
                            "no planar reinsertion for a dropped type C vertex",
                        ));
                    }
                    m = trial;
                }
            }
        }
    }
    Ok(m)
}

/// How the two sides of a Stage 4 split are glued back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergePlan {
    /// Odd subcase: type B vertices `w1` (child) and `w2` (continuation).
    Odd {
        child: Multigraph,
        w1: CorrEntry,
        w2: CorrEntry,
    },
    /// Even subcase, both sides took a plain edge.
    Plain {
        child: Multigraph,
        e1: EdgeId,
        e2: EdgeId,
    },
    /// Even subcase, both sides took a diamond.
    Diamond {
        child: Multigraph,
        d1: CorrEntry,
        d2: CorrEntry,
    },
    /// Even subcase, continuation took a type C vertex `w`; either child may be used.
    Vertex {
        plain: Multigraph,
        e1: EdgeId,
        diamond: Multigraph,
        d1: CorrEntry,
        w: CorrEntry,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    A,
    B,
    C,
}

/// One Stage 4 split, recorded for reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRecord {
    pub step: usize,
    pub case: CaseTag,
    pub cut: (VertexId, VertexId),
    pub plan: MergePlan,
}

/// Removes a diamond and returns the outside partners of its apexes (empty
/// when the apexes are joined to each other).
fn cut_diamond(m: &mut Multigraph, d: &CorrEntry) -> Result<Vec<VertexId>> {
    let (s, t) = d
        .apexes()
        .ok_or_else(|| Error::internal("expected a diamond"))?;
    let inside: BTreeSet<VertexId> = d.vertices.iter().copied().collect();
    let mut ends = Vec::new();
    for apex in [s, t] {
        for e in extra_edges(m, apex, &d.edges) {
            let o = m.opposite(e, apex).expect("incident");
            if !inside.contains(&o) {
                ends.push(o);
            }
        }
    }
    for &v in &d.vertices {
        m.remove_vertex(v)?;
    }
    Ok(ends)
}

/// Removes a subdivision vertex and returns the far ends of its added edges
/// (a loop contributes nothing).
fn cut_vertex(m: &mut Multigraph, w: &CorrEntry) -> Result<Vec<VertexId>> {
    let v = w.vertices[0];
    let ends = extra_edges(m, v, &w.edges)
        .into_iter()
        .filter_map(|e| m.opposite(e, v).filter(|&o| o != v))
        .collect();
    m.remove_vertex(v)?;
    Ok(ends)
}

/// Ways of closing the dangling ends left by removing both gadgets.
fn pairings(a: &[VertexId], b: &[VertexId]) -> Result<Vec<Vec<(VertexId, VertexId)>>> {
    Ok(match (a, b) {
        ([], []) => vec![vec![]],
        ([x, y], []) | ([], [x, y]) => vec![vec![(*x, *y)]],
        ([a1, b1], [a2, b2]) => vec![vec![(*a1, *a2), (*b1, *b2)], vec![(*a1, *b2), (*b1, *a2)]],
        _ => return Err(Error::internal("unexpected number of dangling gadget ends")),
    })
}

/// First planar completion among the pairings, trying them in order. A sole
/// option is returned unchecked and left to the final verification.
fn glue_first_planar(
    base: &Multigraph,
    options: Vec<Vec<(VertexId, VertexId)>>,
    alloc: &mut IdAlloc,
) -> Option<Multigraph> {
    let sole = options.len() == 1;
    for opt in options {
        let mut g = base.clone();
        for (x, y) in opt {
            g.add_edge(alloc, x, y);
        }
        if sole || is_planar(&g) {
            return Some(g);
        }
    }
    None
}

/// Rebuilds the witness of the parent question from the continuation's
/// witness `m2` and the child witnesses stored in `rec`.
pub fn merge_stage4(m2: Multigraph, rec: &SplitRecord, alloc: &mut IdAlloc) -> Result<Multigraph> {
    let mut m2 = m2;
    alloc.reserve_past(&m2);
    match &rec.plan {
        MergePlan::Odd { child, w1, w2 } => {
            let mut m1 = child.clone();
            let z1 = cut_vertex(&mut m1, w1)?;
            let z2 = cut_vertex(&mut m2, w2)?;
            let ([z1], [z2]) = (&z1[..], &z2[..]) else {
                return Err(Error::internal(
                    "type B vertex without exactly one added edge",
                ));
            };
            m2.union_with(&m1)?;
            m2.add_edge(alloc, *z1, *z2);
            Ok(m2)
        }
        MergePlan::Plain { child, e1, e2 } => {
            let mut m1 = child.clone();
            m1.remove_edge(*e1)?;
            m2.remove_edge(*e2)?;
            m2.union_with(&m1)?;
            Ok(m2)
        }
        MergePlan::Diamond { child, d1, d2 } => {
            let mut m1 = child.clone();
            let ends1 = cut_diamond(&mut m1, d1)?;
            let ends2 = cut_diamond(&mut m2, d2)?;
            m2.union_with(&m1)?;
            glue_first_planar(&m2, pairings(&ends1, &ends2)?, alloc)
                .ok_or_else(|| Error::internal("no planar pairing of diamond ends"))
        }
        MergePlan::Vertex {
            plain,
            e1,
            diamond,
            d1,
            w,
        } => {
            let ends2 = cut_vertex(&mut m2, w)?;
            let mut with_plain = plain.clone();
            with_plain.remove_edge(*e1)?;
            with_plain.union_with(&m2)?;
            if ends2.is_empty() {
                return Ok(with_plain);
            }
            if let [x, y] = ends2[..] {
                with_plain.add_edge(alloc, x, y);
                if is_planar(&with_plain) {
                    return Ok(with_plain);
                }
            }
            let mut m1 = diamond.clone();
            let ends1 = cut_diamond(&mut m1, d1)?;
            m1.union_with(&m2)?;
            for opt in pairings(&ends1, &ends2)? {
                let mut g = m1.clone();
                for (x, y) in opt {
                    g.add_edge(alloc, x, y);
                }
                if is_planar(&g) {
                    return Ok(g);
                }
            }
            Err(Error::internal(
                "no planar gluing for a type C continuation",
            ))
        }
    }
}

/// Union of witnesses that overlap only in cut vertices.
pub fn merge_stage3(parts: &[Multigraph]) -> Result<Multigraph> {
    let mut g = Multigraph::new();
    for p in parts {
        g.union_with(p)?;
    }
    Ok(g)
}

/// Reattaches a bridge `u-v` of `h` between two 4-regular pieces of `g`:
/// one added edge at each end is traded for the bridge and an edge between
/// the freed partners.
pub fn merge_stage2(
    g: &mut Multigraph,
    h: &Multigraph,
    bridge: EdgeId,
    alloc: &mut IdAlloc,
) -> Result<()> {
    let (u, v) = h
        .endpoints(bridge)
        .ok_or_else(|| Error::precondition(format!("{bridge} is not an edge of the input")))?;
    alloc.reserve_past(g);
    let pick = |x: VertexId| {
        g.incident(x)
            .iter()
            .copied()
            .filter(|e| !h.has_edge(*e))
            .min()
            .ok_or_else(|| Error::internal(format!("no added edge at bridge end {x}")))
    };
    let eu = pick(u)?;
    let ev = pick(v)?;
    let w = g.opposite(eu, u).expect("incident");
    let x = g.opposite(ev, v).expect("incident");
    g.remove_edge(eu)?;
    g.remove_edge(ev)?;
    g.insert_edge(bridge, u, v)?;
    g.add_edge(alloc, w, x);
    Ok(())
}

/// Replaces every edge of `g` that is not in `h` by a six-vertex gadget:
/// a path through four new vertices plus two apexes adjacent to all four.
pub fn simplify_witness(g: &Multigraph, h: &Multigraph) -> Result<Multigraph> {
    let mut seen = BTreeSet::new();
    for (_, a, b) in h.edges() {
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::precondition("input graph is not simple"));
        }
    }
    let mut out = g.clone();
    let mut alloc = IdAlloc::after(g);
    alloc.reserve_past(h);
    let extra: Vec<(EdgeId, VertexId, VertexId)> =
        g.edges().filter(|(e, _, _)| !h.has_edge(*e)).collect();
    for (e, x, y) in extra {
        out.remove_edge(e)?;
        let path: Vec<VertexId> = (0..4).map(|_| alloc.vertex()).collect();
        let apexes = [alloc.vertex(), alloc.vertex()];
        for &v in path.iter().chain(&apexes) {
            out.add_vertex(v);
        }
        let mut prev = x;
        for &p in path.iter().chain(std::iter::once(&y)) {
            out.add_edge(&mut alloc, prev, p);
            prev = p;
        }
        for &s in &apexes {
            for &p in &path {
                out.add_edge(&mut alloc, s, p);
            }
        }
    }
    let bad = verify(&out, h, VerifyMode::Simple);
    if !bad.is_empty() {
        return Err(Error::internal(format!("simplified witness: {}", bad[0])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{
        build_auxiliary, reduce_double_edges, Augmentation, DiscrepancyFn, Reduction,
    };
    use crate::matching::maximum_matching;
    use crate::oracle::{oracle_embeddable, OracleBudget, OracleOutcome};
    use crate::planar::embed;
    use crate::testutil::{complete, cycle, octahedron};

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn verify_examples() {
        let oct = octahedron();
        assert!(verify(&oct, &oct, VerifyMode::Multigraph).is_empty());
        assert!(verify(&oct, &oct, VerifyMode::Simple).is_empty());

        let k4 = complete(4);
        let bad = verify(&k4, &k4, VerifyMode::Multigraph);
        assert_eq!(bad.len(), 4);
        assert!(matches!(bad[0], Violation::WrongDegree { degree: 3, .. }));

        let mut g = oct.clone();
        g.remove_edge(EdgeId(0)).unwrap();
        let bad = verify(&g, &oct, VerifyMode::Multigraph);
        assert!(bad.contains(&Violation::MissingEdge(EdgeId(0))));

        let k5 = complete(5);
        assert!(verify(&k5, &k5, VerifyMode::Multigraph).contains(&Violation::NotPlanar));
    }

    #[test]
    fn matching_square() {
        let c4 = cycle(4);
        let f: DiscrepancyFn = c4.vertices().map(|w| (w, 1)).collect();
        let rp = DiscrepancyPair::new(c4.clone(), f).unwrap();
        let emb = embed(&c4).unwrap();
        let (aux, copies) = build_auxiliary(&rp, &emb).unwrap();
        // opposite corners matched on purpose
        let m = MatchingResult {
            pairs: vec![(0, 2), (1, 3)],
            is_perfect: true,
        };
        assert!(aux.has_edge(0, 2));
        let mut alloc = IdAlloc::after(&c4);
        let g = satisfy_by_matching(&rp, &emb, &m, &copies, &mut alloc).unwrap();
        assert!(verify_pair(&g, &rp).is_empty());
        // rerouted into two chords between boundary-adjacent corners
        for (e, a, b) in g.edges() {
            if !c4.has_edge(e) {
                assert_eq!(c4.multiplicity(a, b), 1);
            }
        }
    }

    #[test]
    fn matching_identity_and_loop() {
        let k4 = complete(4);
        let rp = DiscrepancyPair::new(k4.clone(), DiscrepancyFn::new()).unwrap();
        let emb = embed(&k4).unwrap();
        let m = MatchingResult {
            pairs: vec![],
            is_perfect: true,
        };
        let g = satisfy_by_matching(&rp, &emb, &m, &[], &mut IdAlloc::after(&k4)).unwrap();
        assert_eq!(g, k4);

        let path = Multigraph::from_edges(&[(0, 1), (1, 2)]);
        let f: DiscrepancyFn = [(v(1), 2)].into_iter().collect();
        let rp = DiscrepancyPair::new(path.clone(), f).unwrap();
        let emb = embed(&path).unwrap();
        let (aux, copies) = build_auxiliary(&rp, &emb).unwrap();
        let m = maximum_matching(&aux);
        let g = satisfy_by_matching(&rp, &emb, &m, &copies, &mut IdAlloc::after(&path)).unwrap();
        assert!(g.has_loops());
        assert!(verify_pair(&g, &rp).is_empty());
    }

    /// Double edge 0-1 between degree-4 vertices inside a planar block.
    fn doubled() -> Multigraph {
        Multigraph::from_edges(&[(0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn undo_roundtrip(k1: EdgeAugKind, k2: EdgeAugKind) {
        let b = doubled();
        let f = DiscrepancyFn::from_deficit(&b).unwrap();
        let mut aug = Augmentation::make_initial(b.clone(), f).unwrap();
        let mut alloc = IdAlloc::after(&b);
        aug.place(EdgeId(0), k1, &mut alloc).unwrap();
        aug.place(EdgeId(1), k2, &mut alloc).unwrap();
        let mut red = aug.red.clone();
        // keep parity even by adding demand on vertex 2 or 3 when needed
        if !red.f.is_even() {
            red.f.set(v(2), red.f.get(v(2)) + 1);
            aug.red = red.clone();
        }
        let Reduction::Reduced { red: reduced, log } = reduce_double_edges(&aug).unwrap() else {
            panic!("unexpected obstruction");
        };
        let sat =
            crate::oracle::oracle_satisfiable_with(&reduced, OracleBudget::unbounded(), &mut alloc);
        let OracleOutcome::Sat(m) = sat else {
            return;
        };
        let back = undo_reduction(m, &log, &mut alloc).unwrap();
        assert!(verify_pair(&back, &aug.red).is_empty(), "{k1:?}+{k2:?}");
    }

    #[test]
    fn undo_rules() {
        use EdgeAugKind::*;
        for (a, b) in [(A, B), (A, C), (B, C), (B, D), (C, D)] {
            undo_roundtrip(a, b);
        }
    }

    #[test]
    fn undo_empty_log_is_identity() {
        let k4 = complete(4);
        assert_eq!(
            undo_reduction(k4.clone(), &[], &mut IdAlloc::after(&k4)).unwrap(),
            k4
        );
    }

    #[test]
    fn stage2_two_singletons() {
        let h = Multigraph::from_edges(&[(0, 1)]);
        let mut g = Multigraph::new();
        let mut alloc = IdAlloc::after(&h);
        for x in [v(0), v(1)] {
            g.add_vertex(x);
            g.add_edge(&mut alloc, x, x);
            g.add_edge(&mut alloc, x, x);
        }
        merge_stage2(&mut g, &h, EdgeId(0), &mut alloc).unwrap();
        assert!(verify(&g, &h, VerifyMode::Multigraph).is_empty());
        assert_eq!(g.multiplicity(v(0), v(1)), 2);
    }

    #[test]
    fn simplify_examples() {
        let k4 = complete(4);
        let OracleOutcome::Sat(g) = oracle_embeddable(&k4, OracleBudget::default()) else {
            panic!("K4 is embeddable");
        };
        let extra = g.edge_count() - k4.edge_count();
        let s = simplify_witness(&g, &k4).unwrap();
        assert_eq!(s.vertex_count(), 4 + 6 * extra);
        assert!(verify(&s, &k4, VerifyMode::Simple).is_empty());

        let oct = octahedron();
        assert_eq!(simplify_witness(&oct, &oct).unwrap(), oct);

        let multi = Multigraph::from_edges(&[(0, 1), (0, 1)]);
        assert!(simplify_witness(&multi, &multi).is_err());

        let single = Multigraph::from_edges(&[(0, 0)]);
        let mut looped = Multigraph::new();
        looped.add_vertex(v(0));
        let mut alloc = IdAlloc::default();
        looped.add_edge(&mut alloc, v(0), v(0));
        looped.add_edge(&mut alloc, v(0), v(0));
        assert!(simplify_witness(&looped, &Multigraph::new()).is_ok());
        assert!(simplify_witness(&looped, &single).is_err());
    }
}
