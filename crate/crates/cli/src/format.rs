//! Plain edge-list files and DOT export.
//!
//! One edge per line as two vertex numbers; a line holding a single number
//! declares a vertex. `u u` is a loop, repeated lines are parallel edges and
//! `#` starts a comment. Edges get ids `0, 1, ...` in file order.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use four_embed::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_edge_list(text: &str) -> Result<Multigraph, ParseError> {
    let mut g = Multigraph::new();
    let mut next_edge = 0u32;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<u32>().map(VertexId).map_err(|_| ParseError {
                line,
                message: format!("expected a non-negative vertex number, found `{s}`"),
            })
        };
        match fields.as_slice() {
            [] => {}
            [v] => {
                g.add_vertex(num(v)?);
            }
            [a, b] => {
                let (a, b) = (num(a)?, num(b)?);
                g.add_vertex(a);
                g.add_vertex(b);
                g.insert_edge(EdgeId(next_edge), a, b)
                    .expect("fresh edge id");
                next_edge += 1;
            }
            _ => {
                return Err(ParseError {
                    line,
                    message: format!("expected one or two fields, found {}", fields.len()),
                })
            }
        }
    }
    Ok(g)
}

/// Isolated vertices first, then edges in id order.
pub fn serialize_edge_list(g: &Multigraph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.deg(v) == 0) {
        let _ = writeln!(out, "{v}");
    }
    for (_, a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Relabels the edges of `g` so that each edge of `h` gets the id of an
/// unused `g` edge with the same ends; every other edge gets a fresh id.
///
/// Files carry no edge identity, so this is how a supergraph read from disk is
/// lined up with the graph it should contain.
pub fn align_edges(h: &Multigraph, g: &Multigraph) -> Multigraph {
    let key = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    let mut pool: Vec<(EdgeId, (VertexId, VertexId))> =
        g.edges().map(|(e, a, b)| (e, key(a, b))).collect();
    let mut out = Multigraph::new();
    for v in g.vertices() {
        out.add_vertex(v);
    }
    let mut used = vec![false; pool.len()];
    for (e, a, b) in h.edges() {
        if let Some(i) = (0..pool.len()).find(|&i| !used[i] && pool[i].1 == key(a, b)) {
            used[i] = true;
            out.insert_edge(e, a, b).expect("distinct h ids");
        }
    }
    let mut next = h.edge_ids().next_back().map_or(0, |e| e.0 + 1);
    for (i, (_, (a, b))) in pool.drain(..).enumerate() {
        if !used[i] {
            out.insert_edge(EdgeId(next), a, b).expect("fresh edge id");
            next += 1;
        }
    }
    out
}

/// DOT rendering of `g`; edges present in `h` are solid, the rest dashed.
pub fn to_dot(g: &Multigraph, h: &Multigraph) -> String {
    let original: BTreeSet<EdgeId> = h
        .edge_ids()
        .filter(|&e| h.endpoints(e) == g.endpoints(e))
        .collect();
    let mut out = String::from("graph witness {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for (e, a, b) in g.edges() {
        let style = if original.contains(&e) {
            "solid"
        } else {
            "dashed"
        };
        let _ = writeln!(out, "  {a} -- {b} [style={style}];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_loops_parallels_and_comments() {
        let g = parse_edge_list("# header\n0 1\n0 1  # again\n2 2\n\n7\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(g.deg(VertexId(2)), 2);
        assert_eq!(g.deg(VertexId(7)), 0);
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_edge_list("0 1\n1 x\n").unwrap_err().line, 2);
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("-1 2\n").is_err());
    }

    #[test]
    fn align_matches_by_ends() {
        let h = Multigraph::from_edges(&[(0, 1), (1, 2)]);
        let g = Multigraph::from_edges(&[(2, 1), (0, 0), (1, 0)]);
        let a = align_edges(&h, &g);
        assert_eq!(a.endpoints(EdgeId(0)), Some((VertexId(0), VertexId(1))));
        assert_eq!(a.endpoints(EdgeId(1)), Some((VertexId(1), VertexId(2))));
        assert_eq!(a.edge_count(), 3);
    }

    #[test]
    fn dot_styles() {
        let h = Multigraph::from_edges(&[(0, 1)]);
        let mut g = h.clone();
        g.insert_edge(EdgeId(5), VertexId(0), VertexId(1)).unwrap();
        let dot = to_dot(&g, &h);
        assert!(dot.contains("0 -- 1 [style=solid];"));
        assert!(dot.contains("0 -- 1 [style=dashed];"));
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (1u32..12, prop::collection::vec((0u32..12, 0u32..12), 0..20)).prop_map(|(n, raw)| {
            let pairs: Vec<(u32, u32)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            let mut g = Multigraph::from_edges(&pairs);
            for v in 0..n {
                g.add_vertex(VertexId(v));
            }
            g
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(g in arb_graph()) {
            let back = parse_edge_list(&serialize_edge_list(&g)).unwrap();
            prop_assert_eq!(back.vertex_set(), g.vertex_set());
            prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        }
    }
}
