//! The decision procedure.
//!
//! Components are decided independently. Each component is cut at its bridges
//! into bridgeless pieces, each piece at its cut vertices into blocks, and each
//! block is reduced by repeatedly splitting off the small side of a minimal
//! 2-vertex cut until no such cut remains. Small leftovers go to the exhaustive
//! search, the rest to the face-matching test.

use std::collections::BTreeSet;
use std::fmt;

use crate::augment::{
    build_auxiliary, endpoints_zero_check, reduce_double_edges, Augmentation, DiscrepancyFn,
    DiscrepancyPair, EdgeAugKind, Reduction,
};
use crate::connectivity::{blocks, components, minimal_two_cut, two_edge_components};
use crate::error::{Error, Result};
use crate::matching::maximum_matching;
use crate::multigraph::{EdgeId, IdAlloc, Multigraph, VertexId};
use crate::oracle::{oracle_satisfiable_with, OracleBudget, OracleOutcome};
use crate::planar::{embed, is_planar, kuratowski_edges};
use crate::witness::{
    ensure_pair, merge_stage2, merge_stage3, merge_stage4, satisfy_by_matching, undo_reduction,
    verify, CaseTag, MergePlan, SplitRecord, VerifyMode,
};

/// Location of a failing question: component, bridgeless piece, block, and
/// Stage 4 iteration, all zero-based in decomposition order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PieceId {
    pub component: usize,
    pub piece: usize,
    pub block: usize,
    pub step: usize,
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {} piece {} block {} step {}",
            self.component, self.piece, self.block, self.step
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    DegreeTooHigh(VertexId),
    NonPlanarInput { obstruction: Vec<EdgeId> },
    MatchingFailed(PieceId),
    TypeADObstruction(PieceId),
    BoundedCaseExhausted(PieceId),
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::DegreeTooHigh(_) => "DegreeTooHigh",
            Certificate::NonPlanarInput { .. } => "NonPlanarInput",
            Certificate::MatchingFailed(_) => "MatchingFailed",
            Certificate::TypeADObstruction(_) => "TypeADObstruction",
            Certificate::BoundedCaseExhausted(_) => "BoundedCaseExhausted",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::DegreeTooHigh(v) => write!(f, "vertex {v} has degree above 4"),
            Certificate::NonPlanarInput { obstruction } => {
                write!(
                    f,
                    "input is not planar ({} obstruction edges)",
                    obstruction.len()
                )
            }
            Certificate::MatchingFailed(p) => write!(f, "no perfect face matching at {p}"),
            Certificate::TypeADObstruction(p) => {
                write!(f, "plain edge parallel to a diamond at {p}")
            }
            Certificate::BoundedCaseExhausted(p) => write!(f, "exhaustive search failed at {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The witness is present when one was requested; it has been verified.
    Embeddable(Option<Multigraph>),
    NotEmbeddable(Certificate),
}

impl Verdict {
    pub fn is_embeddable(&self) -> bool {
        matches!(self, Verdict::Embeddable(_))
    }

    pub fn witness(&self) -> Option<&Multigraph> {
        match self {
            Verdict::Embeddable(w) => w.as_ref(),
            Verdict::NotEmbeddable(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    Matching,
    TypeAD,
    Bounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatAnswer {
    Sat(Option<Multigraph>),
    Unsat(Failure),
}

impl SatAnswer {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatAnswer::Sat(_))
    }
}

/// The four membership statements of a 2-cut `{u, v}` with small side `B1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutStatements {
    pub u1: bool,
    pub v1: bool,
    pub u2: bool,
    pub v2: bool,
}

impl CutStatements {
    pub fn case(&self) -> CaseTag {
        if self.u1 && self.v1 {
            CaseTag::A
        } else if self.u2 && self.v2 {
            CaseTag::B
        } else {
            CaseTag::C
        }
    }
}

/// Number of blue edges from `x` into `side`.
fn edges_into(aug: &Augmentation, x: VertexId, side: &BTreeSet<VertexId>) -> usize {
    aug.blue
        .incident(x)
        .iter()
        .filter(|&&e| side.contains(&aug.blue.opposite(e, x).expect("incident")))
        .count()
}

/// Evaluates the statements for cut `{u, v}` whose small side is `side1`.
pub fn classify_cut(
    aug: &Augmentation,
    u: VertexId,
    v: VertexId,
    side1: &BTreeSet<VertexId>,
) -> CutStatements {
    let deg = |x: VertexId| aug.blue.deg(x);
    let uv = aug.blue.multiplicity(u, v);
    let to1 = |x| edges_into(aug, x, side1);
    let to2 = |x| deg(x) - uv - to1(x);
    let free = |x| aug.red.f.get(x) == 0;
    CutStatements {
        u1: free(u) || to1(u) == 1,
        v1: free(v) || to1(v) == 1,
        u2: free(u) || to2(u) == 1,
        v2: free(v) || to2(v) == 1,
    }
}

/// Bridges and bridgeless pieces of a connected graph.
pub fn stage2_split(component: &Multigraph) -> Result<(BTreeSet<EdgeId>, Vec<Multigraph>)> {
    let (bridges, sets) = two_edge_components(component)?;
    let pieces = sets
        .iter()
        .map(|s| component.induced(s))
        .collect::<Result<_>>()?;
    Ok((bridges, pieces))
}

/// Blocks of a loopless bridgeless piece with their discrepancy functions.
pub fn stage3_split(piece: &Multigraph, f: &DiscrepancyFn) -> Result<Vec<DiscrepancyPair>> {
    if piece.has_loops() {
        return Err(Error::precondition("stage 3 expects a loopless piece"));
    }
    let dec = blocks(piece)?;
    for &c in &dec.cut_vertices {
        let holders: Vec<_> = dec
            .blocks
            .iter()
            .filter(|b| b.vertices.contains(&c))
            .collect();
        let split_ok = holders.len() == 2
            && holders.iter().all(|b| {
                b.edges
                    .iter()
                    .map(|&e| piece.endpoints(e).expect("edge"))
                    .filter(|&(a, b)| a == c || b == c)
                    .count()
                    == 2
            });
        if !split_ok || f.get(c) != 0 {
            return Err(Error::internal(format!(
                "cut vertex {c} does not split into two 2-edge halves"
            )));
        }
    }
    let mut out = Vec::with_capacity(dec.blocks.len());
    for b in &dec.blocks {
        let mut g = Multigraph::new();
        for &v in &b.vertices {
            g.add_vertex(v);
        }
        for &e in &b.edges {
            let (x, y) = piece.endpoints(e).expect("edge");
            g.insert_edge(e, x, y)?;
        }
        let fb = f.restrict(&b.vertices);
        out.push(
            DiscrepancyPair::new(g, fb)
                .map_err(|e| Error::internal(format!("block discrepancy: {e}")))?,
        );
    }
    Ok(out)
}

enum Flow {
    Continue,
    Done(SatAnswer),
}

/// Mutable state shared by every question of one decision run.
pub struct Solver {
    pub want_witness: bool,
    pub budget: OracleBudget,
    pub alloc: IdAlloc,
}

impl Solver {
    pub fn new(h: &Multigraph, want_witness: bool) -> Self {
        Solver {
            want_witness,
            budget: OracleBudget::unbounded(),
            alloc: IdAlloc::after(h),
        }
    }

    fn bounded(&mut self, rp: &DiscrepancyPair, step: usize) -> Result<SatAnswer> {
        match oracle_satisfiable_with(rp, self.budget, &mut self.alloc) {
            OracleOutcome::Sat(g) => Ok(SatAnswer::Sat(Some(g))),
            OracleOutcome::Unsat => Ok(SatAnswer::Unsat(Failure {
                kind: FailureKind::Bounded,
                step,
            })),
            OracleOutcome::OverBudget => Err(Error::internal(
                "bounded question exceeds the search budget",
            )),
        }
    }

    /// Decides a question whose blue graph is 2-connected without 2-cuts.
    pub fn solve_three_cut_free(&mut self, aug: &Augmentation, step: usize) -> Result<SatAnswer> {
        if aug.blue.vertex_count() <= 3 {
            return self.bounded(&aug.red, step);
        }
        if !endpoints_zero_check(aug) {
            return Err(Error::internal("double edge with a demanding endpoint"));
        }
        let (red, log) = match reduce_double_edges(aug)? {
            Reduction::Unsatisfiable { .. } => {
                return Ok(SatAnswer::Unsat(Failure {
                    kind: FailureKind::TypeAD,
                    step,
                }))
            }
            Reduction::Reduced { red, log } => (red, log),
        };
        let emb = embed(&red.graph).map_err(|e| Error::internal(format!("red graph: {e}")))?;
        let (aux, copies) = build_auxiliary(&red, &emb)?;
        let m = maximum_matching(&aux);
        if !m.is_perfect {
            return Ok(SatAnswer::Unsat(Failure {
                kind: FailureKind::Matching,
                step,
            }));
        }
        if !self.want_witness {
            return Ok(SatAnswer::Sat(None));
        }
        let g = satisfy_by_matching(&red, &emb, &m, &copies, &mut self.alloc)?;
        let g = undo_reduction(g, &log, &mut self.alloc)?;
        Ok(SatAnswer::Sat(Some(g)))
    }

    /// Decides `(C, f)` for a block `C`.
    pub fn stage4_solve(&mut self, c: Multigraph, f: DiscrepancyFn) -> Result<SatAnswer> {
        let aug = Augmentation::make_initial(c, f)?;
        self.solve_augmentation(aug, 0)
    }

    /// The 2-cut loop on an arbitrary cut-vertex-free augmentation.
    fn solve_augmentation(
        &mut self,
        mut aug: Augmentation,
        first_step: usize,
    ) -> Result<SatAnswer> {
        let mut records: Vec<SplitRecord> = Vec::new();
        let mut step = first_step;
        let last = loop {
            if aug.blue.vertex_count() <= 3 || aug.blue.has_loops() {
                break self.bounded(&aug.red, step)?;
            }
            let Some(cut) = minimal_two_cut(&aug.blue)? else {
                break self.solve_three_cut_free(&aug, step)?;
            };
            match self.split(&mut aug, cut.u, cut.v, cut.small_side, step, &mut records)? {
                Flow::Continue => step += 1,
                Flow::Done(ans) => break ans,
            }
        };
        match last {
            SatAnswer::Sat(Some(mut m)) if self.want_witness => {
                for rec in records.iter().rev() {
                    m = merge_stage4(m, rec, &mut self.alloc)?;
                }
                Ok(SatAnswer::Sat(Some(m)))
            }
            SatAnswer::Sat(_) => Ok(SatAnswer::Sat(None)),
            unsat => Ok(unsat),
        }
    }

    fn split(
        &mut self,
        aug: &mut Augmentation,
        u: VertexId,
        v: VertexId,
        side1: BTreeSet<VertexId>,
        step: usize,
        records: &mut Vec<SplitRecord>,
    ) -> Result<Flow> {
        let st = classify_cut(aug, u, v, &side1);
        match st.case() {
            CaseTag::A => self.split_two_sided(aug, u, v, &side1, CaseTag::A, false, step, records),
            CaseTag::B => self.split_two_sided(aug, u, v, &side1, CaseTag::B, false, step, records),
            CaseTag::C => {
                let (u, v) = if st.u1 && !st.u2 && !st.v1 && st.v2 {
                    (u, v)
                } else {
                    (v, u)
                };
                let f = |x| aug.red.f.get(x);
                let shape_ok = side1.len() == 1
                    && aug.blue.multiplicity(u, v) == 0
                    && f(u) == 1
                    && f(v) == 1
                    && edges_into(aug, u, &side1) == 1
                    && edges_into(aug, v, &side1) == 2
                    && aug.blue.deg(u) == 3
                    && aug.blue.deg(v) == 3;
                if !shape_ok {
                    return Err(Error::internal(
                        "case (c) cut does not have the forced shape",
                    ));
                }
                if aug.blue.vertex_count() == 4 {
                    return Ok(Flow::Done(self.bounded(&aug.red, step)?));
                }
                let x = aug
                    .blue
                    .incident(v)
                    .iter()
                    .map(|&e| aug.blue.opposite(e, v).expect("incident"))
                    .find(|w| !side1.contains(w))
                    .ok_or_else(|| Error::internal("case (c) vertex without an outer neighbour"))?;
                let mut hat = side1;
                hat.insert(v);
                self.split_two_sided(aug, u, x, &hat, CaseTag::C, true, step, records)
            }
        }
    }

    /// Splits `aug` along `{u, v}`; `side1` is split off and decided now, the
    /// rest stays in `aug` with a new `u-v` edge. Case A semantics apply to
    /// tags A and C, case B semantics to tag B.
    #[allow(clippy::too_many_arguments)]
    fn split_two_sided(
        &mut self,
        aug: &mut Augmentation,
        u: VertexId,
        v: VertexId,
        side1: &BTreeSet<VertexId>,
        tag: CaseTag,
        child_by_search: bool,
        step: usize,
        records: &mut Vec<SplitRecord>,
    ) -> Result<Flow> {
        let uv_to_child = tag == CaseTag::B;
        let mut child_edges: BTreeSet<EdgeId> = BTreeSet::new();
        for &w in side1 {
            child_edges.extend(aug.blue.incident(w).iter().copied());
        }
        if uv_to_child {
            child_edges.extend(aug.blue.edges_between(u, v));
        }
        let mut verts1 = side1.clone();
        verts1.insert(u);
        verts1.insert(v);
        let mut base1 = aug.restrict(&verts1, &child_edges)?;
        for &e in &child_edges {
            aug.remove_blue_edge(e)?;
        }
        for &w in side1 {
            aug.remove_blue_vertex(w)?;
        }
        let zeroed = if uv_to_child {
            &mut aug.red.f
        } else {
            &mut base1.red.f
        };
        zeroed.set(u, 0);
        zeroed.set(v, 0);

        let (s1, s2) = (base1.red.f.sum(), aug.red.f.sum());
        if s1 % 2 != s2 % 2 {
            return Err(Error::internal("split sides disagree in parity"));
        }
        let cut = (u, v);
        if s1 % 2 == 1 {
            let mut c1 = base1;
            let e1 = c1.add_blue_edge(&mut self.alloc, u, v, EdgeAugKind::B);
            let a1 = self.solve_child(c1.clone(), child_by_search, step)?;
            let SatAnswer::Sat(m1) = a1 else {
                return Ok(Flow::Done(a1));
            };
            let e2 = aug.add_blue_edge(&mut self.alloc, u, v, EdgeAugKind::B);
            self.check_local(aug, u, v)?;
            if let (true, Some(child)) = (self.want_witness, m1) {
                records.push(SplitRecord {
                    step,
                    case: tag,
                    cut,
                    plan: MergePlan::Odd {
                        child,
                        w1: c1.corr[&e1].clone(),
                        w2: aug.corr[&e2].clone(),
                    },
                });
            }
            return Ok(Flow::Continue);
        }

        let mut plain = base1.clone();
        let e1 = plain.add_blue_edge(&mut self.alloc, u, v, EdgeAugKind::A);
        let mut diamond = base1;
        let d1 = diamond.add_blue_edge(&mut self.alloc, u, v, EdgeAugKind::D);
        let d1_entry = diamond.corr[&d1].clone();
        let ap = self.solve_child(plain, child_by_search, step)?;
        let ad = self.solve_child(diamond, child_by_search, step)?;
        let plan_kind = match (&ap, &ad) {
            (SatAnswer::Sat(_), SatAnswer::Sat(_)) => EdgeAugKind::C,
            (SatAnswer::Sat(_), _) => EdgeAugKind::A,
            (_, SatAnswer::Sat(_)) => EdgeAugKind::D,
            _ => return Ok(Flow::Done(ap)),
        };
        let e2 = aug.add_blue_edge(&mut self.alloc, u, v, plan_kind);
        self.check_local(aug, u, v)?;
        if !self.want_witness {
            return Ok(Flow::Continue);
        }
        let take = |a: SatAnswer| match a {
            SatAnswer::Sat(Some(m)) => Some(m),
            _ => None,
        };
        let plan = match plan_kind {
            EdgeAugKind::C => MergePlan::Vertex {
                plain: take(ap).ok_or_else(missing)?,
                e1,
                diamond: take(ad).ok_or_else(missing)?,
                d1: d1_entry,
                w: aug.corr[&e2].clone(),
            },
            EdgeAugKind::A => MergePlan::Plain {
                child: take(ap).ok_or_else(missing)?,
                e1,
                e2,
            },
            _ => MergePlan::Diamond {
                child: take(ad).ok_or_else(missing)?,
                d1: d1_entry,
                d2: aug.corr[&e2].clone(),
            },
        };
        records.push(SplitRecord {
            step,
            case: tag,
            cut,
            plan,
        });
        Ok(Flow::Continue)
    }

    fn solve_child(
        &mut self,
        child: Augmentation,
        by_search: bool,
        step: usize,
    ) -> Result<SatAnswer> {
        child
            .red
            .f
            .validate(&child.red.graph)
            .map_err(|e| Error::internal(format!("split child: {e}")))?;
        if by_search || child.blue.vertex_count() <= 3 {
            return self.bounded(&child.red, step);
        }
        self.solve_augmentation(child, step)
    }

    fn check_local(&self, aug: &Augmentation, u: VertexId, v: VertexId) -> Result<()> {
        for x in [u, v] {
            if aug.red.graph.deg(x) + aug.red.f.get(x) as usize > 4 {
                return Err(Error::internal(format!(
                    "continuation breaks the degree bound at {x}"
                )));
            }
        }
        Ok(())
    }
}

fn missing() -> Error {
    Error::internal("child witness missing")
}

/// Decides whether `h` is a subgraph of a 4-regular planar multigraph on the
/// same vertex set, optionally producing a verified witness.
pub fn decide(h: &Multigraph, want_witness: bool) -> Result<Verdict> {
    if let Some(v) = h.vertices().find(|&v| h.deg(v) > 4) {
        return Ok(Verdict::NotEmbeddable(Certificate::DegreeTooHigh(v)));
    }
    if !is_planar(h) {
        return Ok(Verdict::NotEmbeddable(Certificate::NonPlanarInput {
            obstruction: kuratowski_edges(h).unwrap_or_default(),
        }));
    }
    let mut solver = Solver::new(h, want_witness);
    let mut witness = Multigraph::new();
    for (ci, comp) in components(h).iter().enumerate() {
        let g = h.induced(comp)?;
        let (bridges, pieces) = stage2_split(&g)?;
        let mut comp_witness = Multigraph::new();
        for (pi, piece) in pieces.iter().enumerate() {
            // loops never matter for satisfiability; they return at the end
            let f = DiscrepancyFn::from_deficit(piece)?;
            let loopless = piece.without_loops();
            let mut block_witnesses = Vec::new();
            for (bi, q) in stage3_split(&loopless, &f)?.into_iter().enumerate() {
                let id = |step| PieceId {
                    component: ci,
                    piece: pi,
                    block: bi,
                    step,
                };
                match solver.stage4_solve(q.graph.clone(), q.f.clone())? {
                    SatAnswer::Unsat(fail) => {
                        let cert = match fail.kind {
                            FailureKind::Matching => Certificate::MatchingFailed(id(fail.step)),
                            FailureKind::TypeAD => Certificate::TypeADObstruction(id(fail.step)),
                            FailureKind::Bounded => {
                                Certificate::BoundedCaseExhausted(id(fail.step))
                            }
                        };
                        return Ok(Verdict::NotEmbeddable(cert));
                    }
                    SatAnswer::Sat(Some(m)) if want_witness => {
                        ensure_pair(&m, &q, "block witness")?;
                        block_witnesses.push(m);
                    }
                    SatAnswer::Sat(_) => {}
                }
            }
            if want_witness {
                let mut pw = merge_stage3(&block_witnesses)?;
                for (e, a, b) in piece.edges().filter(|(_, a, b)| a == b) {
                    pw.insert_edge(e, a, b)?;
                }
                let target = DiscrepancyPair {
                    graph: piece.clone(),
                    f,
                };
                ensure_pair(&pw, &target, "piece witness")?;
                comp_witness.union_with(&pw)?;
            }
        }
        if want_witness {
            for &b in &bridges {
                merge_stage2(&mut comp_witness, h, b, &mut solver.alloc)?;
            }
            witness.union_with(&comp_witness)?;
        }
    }
    if !want_witness {
        return Ok(Verdict::Embeddable(None));
    }
    let bad = verify(&witness, h, VerifyMode::Multigraph);
    if let Some(first) = bad.first() {
        return Err(Error::internal(format!("final witness: {first}")));
    }
    Ok(Verdict::Embeddable(Some(witness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_embeddable;
    use crate::testutil::{complete, cycle, k5_minus_e, octahedron};

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn check(h: &Multigraph) -> bool {
        let verdict = decide(h, true).unwrap();
        let oracle = oracle_embeddable(h, OracleBudget::unbounded());
        assert_eq!(
            verdict.is_embeddable(),
            oracle.is_sat(),
            "disagreement on {:?}",
            h.endpoint_multiset()
        );
        if let Some(w) = verdict.witness() {
            assert!(verify(w, h, VerifyMode::Multigraph).is_empty());
        }
        verdict.is_embeddable()
    }

    #[test]
    fn k5_minus_edge() {
        let verdict = decide(&k5_minus_e(), false).unwrap();
        assert!(matches!(
            verdict,
            Verdict::NotEmbeddable(Certificate::MatchingFailed(_))
        ));
        assert!(!check(&k5_minus_e()));
    }

    #[test]
    fn small_examples() {
        let oct = octahedron();
        assert_eq!(
            decide(&oct, true).unwrap(),
            Verdict::Embeddable(Some(oct.clone()))
        );
        assert!(check(&complete(4)));
        assert!(check(&cycle(4)));
        assert!(check(&Multigraph::from_edges(&[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4)
        ])));
        assert!(check(&Multigraph::from_edges(&[
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 3)
        ])));
        assert!(check(&Multigraph::from_edges(&[(0, 1)])));
        assert!(check(&Multigraph::from_edges(&[(0, 0), (0, 1), (1, 1)])));
        let mut lone = Multigraph::new();
        lone.add_vertex(v(3));
        assert!(check(&lone));
        assert!(check(&Multigraph::new()));
    }

    #[test]
    fn rejections() {
        let star = Multigraph::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(
            decide(&star, false).unwrap(),
            Verdict::NotEmbeddable(Certificate::DegreeTooHigh(v(0)))
        );
        let mut k33 = vec![];
        for a in 0..3u32 {
            for b in 3..6u32 {
                k33.push((a, b));
            }
        }
        let verdict = decide(&Multigraph::from_edges(&k33), false).unwrap();
        assert!(matches!(
            verdict,
            Verdict::NotEmbeddable(Certificate::NonPlanarInput { ref obstruction }) if obstruction.len() == 9
        ));
    }

    #[test]
    fn stage3_bowtie() {
        let bowtie = Multigraph::from_edges(&[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let f = DiscrepancyFn::from_deficit(&bowtie).unwrap();
        let parts = stage3_split(&bowtie, &f).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.f.get(v(0)), 0);
            assert_eq!(p.f.sum(), 4);
        }
        assert_eq!(
            stage3_split(&cycle(4), &DiscrepancyFn::from_deficit(&cycle(4)).unwrap())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn stage2_pieces() {
        let tri_pendant = Multigraph::from_edges(&[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let (bridges, pieces) = stage2_split(&tri_pendant).unwrap();
        assert_eq!(bridges.len(), 1);
        assert_eq!(pieces.len(), 2);
        let (_, pieces) =
            stage2_split(&Multigraph::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4)])).unwrap();
        assert_eq!(pieces.len(), 5);
    }

    #[test]
    fn classify_examples() {
        let c6 = cycle(6);
        let f = DiscrepancyFn::new();
        let aug = Augmentation::make_initial(c6, f).unwrap();
        let side: BTreeSet<VertexId> = [v(1), v(2)].into_iter().collect();
        assert_eq!(classify_cut(&aug, v(0), v(3), &side).case(), CaseTag::A);
    }

    #[test]
    fn stage4_examples() {
        let k4 = complete(4);
        let f: DiscrepancyFn = k4.vertices().map(|w| (w, 1)).collect();
        let mut s = Solver::new(&k4, true);
        assert!(s.stage4_solve(k4, f).unwrap().is_sat());

        let c4 = cycle(4);
        let f: DiscrepancyFn = c4.vertices().map(|w| (w, 2)).collect();
        let mut s = Solver::new(&c4, true);
        let SatAnswer::Sat(Some(m)) = s.stage4_solve(c4.clone(), f.clone()).unwrap() else {
            panic!("C4 doubles");
        };
        assert!(crate::witness::verify_pair(&m, &DiscrepancyPair { graph: c4, f }).is_empty());
    }

    #[test]
    fn larger_cycles_and_ladders() {
        for n in 3..12 {
            assert!(check(&cycle(n)));
        }
        for n in 3..8u32 {
            let mut p = vec![];
            for i in 0..n {
                p.push((i, (i + 1) % n));
                p.push((n + i, n + (i + 1) % n));
                p.push((i, n + i));
            }
            let g = Multigraph::from_edges(&p);
            if g.vertex_count() <= 10 {
                check(&g);
            } else {
                assert!(decide(&g, true).unwrap().is_embeddable());
            }
        }
    }
}
