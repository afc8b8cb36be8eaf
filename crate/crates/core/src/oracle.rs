//! Exhaustive satisfiability search for small discrepancy pairs.
//!
//! Any satisfying addition can be normalised so that its non-loop part is a
//! simple graph `S` on the vertices with `f > 0`, with `deg_S(v) <= f(v)` and
//! `deg_S(v) = f(v) mod 2`: two parallel added edges `a-b` are swapped for one
//! loop at `a` and one at `b`, which keeps degrees and cannot hurt planarity.
//! The leftover demand is filled with loops. The search enumerates such `S`
//! vertex by vertex and abandons a branch as soon as the partial graph is
//! nonplanar.

use std::time::{Duration, Instant};

use crate::augment::DiscrepancyPair;
use crate::multigraph::{IdAlloc, Multigraph, VertexId};
use crate::planar::is_planar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of vertices with positive demand.
    pub max_vertices: usize,
    /// Largest number of added edges (half the total demand).
    pub max_added_edges: usize,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 8,
            max_added_edges: 8,
            time_limit: None,
        }
    }
}

impl OracleBudget {
    pub fn unbounded() -> Self {
        OracleBudget {
            max_vertices: usize::MAX,
            max_added_edges: usize::MAX,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Sat(Multigraph),
    Unsat,
    OverBudget,
}

impl OracleOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleOutcome::Sat(_))
    }
}

struct Search<'a> {
    verts: Vec<VertexId>,
    rem: Vec<u8>,
    graph: Multigraph,
    alloc: &'a mut IdAlloc,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> bool {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                self.timed_out = true;
                return false;
            }
        }
        if i == self.verts.len() {
            return true;
        }
        let need = self.rem[i] as usize;
        let cands: Vec<usize> = (i + 1..self.verts.len())
            .filter(|&j| self.rem[j] > 0)
            .collect();
        let mut chosen = Vec::new();
        self.subsets(i, need, &cands, 0, &mut chosen)
    }

    /// Tries every subset of `cands[from..]` extending `chosen` whose final
    /// size has the parity of `need` and does not exceed it.
    fn subsets(
        &mut self,
        i: usize,
        need: usize,
        cands: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() % 2 == need % 2 && self.try_choice(i, need, chosen) {
            return true;
        }
        if self.timed_out || chosen.len() == need {
            return false;
        }
        for k in from..cands.len() {
            chosen.push(cands[k]);
            if self.subsets(i, need, cands, k + 1, chosen) {
                return true;
            }
            chosen.pop();
            if self.timed_out {
                return false;
            }
        }
        false
    }

    fn try_choice(&mut self, i: usize, need: usize, chosen: &[usize]) -> bool {
        let a = self.verts[i];
        let mut added = Vec::with_capacity(chosen.len() + need / 2);
        for &j in chosen {
            added.push(self.graph.add_edge(self.alloc, a, self.verts[j]));
            self.rem[j] -= 1;
        }
        let ok = chosen.is_empty() || is_planar(&self.graph);
        if ok {
            for _ in 0..(need - chosen.len()) / 2 {
                added.push(self.graph.add_edge(self.alloc, a, a));
            }
            let saved = self.rem[i];
            self.rem[i] = 0;
            if self.run(i + 1) {
                return true;
            }
            self.rem[i] = saved;
        }
        for e in added {
            self.graph.remove_edge(e).expect("own edge");
        }
        for &j in chosen {
            self.rem[j] += 1;
        }
        false
    }
}

/// Exhaustive search with fresh ids taken from `alloc`.
pub fn oracle_satisfiable_with(
    rp: &DiscrepancyPair,
    budget: OracleBudget,
    alloc: &mut IdAlloc,
) -> OracleOutcome {
    let total = rp.f.sum();
    if total % 2 == 1 {
        return OracleOutcome::Unsat;
    }
    let support: Vec<(VertexId, u8)> = rp.f.support().collect();
    if support
        .iter()
        .any(|&(v, x)| rp.graph.deg(v) + x as usize > 4 || !rp.graph.has_vertex(v))
    {
        return OracleOutcome::Unsat;
    }
    if support.len() > budget.max_vertices || total / 2 > budget.max_added_edges {
        return OracleOutcome::OverBudget;
    }
    if !is_planar(&rp.graph) {
        return OracleOutcome::Unsat;
    }
    alloc.reserve_past(&rp.graph);
    let mut s = Search {
        verts: support.iter().map(|p| p.0).collect(),
        rem: support.iter().map(|p| p.1).collect(),
        graph: rp.graph.clone(),
        alloc,
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        timed_out: false,
    };
    if s.run(0) {
        OracleOutcome::Sat(s.graph)
    } else if s.timed_out {
        OracleOutcome::OverBudget
    } else {
        OracleOutcome::Unsat
    }
}

/// Is there a planar `G ⊇ rp.graph` on the same vertices with `deg_G = deg + f`?
pub fn oracle_satisfiable(rp: &DiscrepancyPair, budget: OracleBudget) -> OracleOutcome {
    let mut alloc = IdAlloc::after(&rp.graph);
    oracle_satisfiable_with(rp, budget, &mut alloc)
}

/// Is `h` a subgraph of a 4-regular planar multigraph on the same vertex set?
pub fn oracle_embeddable(h: &Multigraph, budget: OracleBudget) -> OracleOutcome {
    match DiscrepancyPair::deficit(h.clone()) {
        Ok(rp) => oracle_satisfiable(&rp, budget),
        Err(_) => OracleOutcome::Unsat,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::DiscrepancyFn;
    use crate::testutil::{complete, cycle, k5_minus_e, octahedron};
    use proptest::prelude::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn sat_ok(rp: &DiscrepancyPair, out: &OracleOutcome) -> bool {
        match out {
            OracleOutcome::Sat(g) => rp.is_satisfied_by_degrees(g) && is_planar(g),
            _ => false,
        }
    }

    /// Plain enumeration of every multiset of added edges and loops.
    fn naive(rp: &DiscrepancyPair) -> bool {
        fn rec(
            g: &mut Multigraph,
            alloc: &mut IdAlloc,
            verts: &[VertexId],
            rem: &mut [u8],
            pos: usize,
        ) -> bool {
            let Some(i) = (pos..verts.len()).find(|&i| rem[i] > 0) else {
                return is_planar(g);
            };
            let a = verts[i];
            for j in i..verts.len() {
                let need = if i == j { 2 } else { 1 };
                if rem[j] < need || (i != j && rem[i] < 1) {
                    continue;
                }
                rem[i] -= 1;
                rem[j] -= 1;
                let e = g.add_edge(alloc, a, verts[j]);
                let ok = rec(g, alloc, verts, rem, i);
                g.remove_edge(e).unwrap();
                rem[i] += 1;
                rem[j] += 1;
                if ok {
                    return true;
                }
            }
            false
        }
        if !rp.f.is_even() {
            return false;
        }
        let verts: Vec<VertexId> = rp.graph.vertices().collect();
        let mut rem: Vec<u8> = verts.iter().map(|&w| rp.f.get(w)).collect();
        let mut g = rp.graph.clone();
        let mut alloc = IdAlloc::after(&g);
        rec(&mut g, &mut alloc, &verts, &mut rem, 0)
    }

    #[test]
    fn examples() {
        let k5e = DiscrepancyPair::deficit(k5_minus_e()).unwrap();
        assert_eq!(
            oracle_satisfiable(&k5e, OracleBudget::default()),
            OracleOutcome::Unsat
        );
        assert_eq!(
            oracle_embeddable(&k5_minus_e(), OracleBudget::default()),
            OracleOutcome::Unsat
        );

        let mut single = Multigraph::new();
        single.add_vertex(v(0));
        let rp = DiscrepancyPair::deficit(single).unwrap();
        let out = oracle_satisfiable(&rp, OracleBudget::default());
        assert!(sat_ok(&rp, &out));

        let c4 = cycle(4);
        let rp = DiscrepancyPair::deficit(c4).unwrap();
        assert!(sat_ok(
            &rp,
            &oracle_satisfiable(&rp, OracleBudget::default())
        ));

        let k4 = complete(4);
        let rp = DiscrepancyPair::deficit(k4.clone()).unwrap();
        assert!(sat_ok(
            &rp,
            &oracle_embeddable(&k4, OracleBudget::default())
        ));

        let oct = octahedron();
        assert_eq!(
            oracle_embeddable(&oct, OracleBudget::default()),
            OracleOutcome::Sat(oct)
        );

        assert_eq!(
            oracle_embeddable(&complete(5), OracleBudget::default()),
            OracleOutcome::Unsat
        );
        let star = Multigraph::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(
            oracle_embeddable(&star, OracleBudget::default()),
            OracleOutcome::Unsat
        );
    }

    #[test]
    fn odd_and_budget() {
        let c4 = cycle(4);
        let f: DiscrepancyFn = [(v(0), 1)].into_iter().collect();
        let rp = DiscrepancyPair { graph: c4, f };
        assert_eq!(
            oracle_satisfiable(&rp, OracleBudget::default()),
            OracleOutcome::Unsat
        );

        let big = cycle(12);
        let rp = DiscrepancyPair::deficit(big).unwrap();
        assert_eq!(
            oracle_satisfiable(&rp, OracleBudget::default()),
            OracleOutcome::OverBudget
        );
        assert!(oracle_satisfiable(&rp, OracleBudget::unbounded()).is_sat());
    }

    #[test]
    fn deterministic() {
        let k4 = complete(4);
        assert_eq!(
            oracle_embeddable(&k4, OracleBudget::default()),
            oracle_embeddable(&k4, OracleBudget::default())
        );
    }

    fn arb_pair() -> impl Strategy<Value = DiscrepancyPair> {
        (
            2u32..=6,
            prop::collection::vec((0u32..6, 0u32..6), 0..10),
            prop::collection::vec(0u8..=4, 6),
        )
            .prop_filter_map("valid pair", |(n, raw, fs)| {
                let pairs: Vec<(u32, u32)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
                let mut g = Multigraph::from_edges(&pairs);
                for i in 0..n {
                    g.add_vertex(VertexId(i));
                }
                if g.max_degree() > 4 {
                    return None;
                }
                let f: DiscrepancyFn = g
                    .vertices()
                    .map(|w| (w, fs[w.0 as usize].min((4 - g.deg(w)) as u8)))
                    .collect();
                DiscrepancyPair::new(g, f).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_naive(rp in arb_pair()) {
            let out = oracle_satisfiable(&rp, OracleBudget::unbounded());
            prop_assert_eq!(out.is_sat(), naive(&rp));
            if out.is_sat() {
                prop_assert!(sat_ok(&rp, &out));
            }
        }
    }
}
