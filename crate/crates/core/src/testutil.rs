//! Shared fixtures for unit tests.

use crate::multigraph::Multigraph;

pub(crate) fn complete(n: u32) -> Multigraph {
    let mut p = vec![];
    for a in 0..n {
        for b in a + 1..n {
            p.push((a, b));
        }
    }
    Multigraph::from_edges(&p)
}

/// K5 without the edge 0-2.
pub(crate) fn k5_minus_e() -> Multigraph {
    let mut p = vec![];
    for a in 0..5u32 {
        for b in a + 1..5 {
            if (a, b) != (0, 2) {
                p.push((a, b));
            }
        }
    }
    Multigraph::from_edges(&p)
}

pub(crate) fn cycle(n: u32) -> Multigraph {
    let p: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::from_edges(&p)
}

pub(crate) fn octahedron() -> Multigraph {
    // antipodal pairs 0-5, 1-3, 2-4 are the non-edges
    let mut p = vec![];
    for a in 0..6u32 {
        for b in a + 1..6 {
            if !matches!((a, b), (0, 5) | (1, 3) | (2, 4)) {
                p.push((a, b));
            }
        }
    }
    Multigraph::from_edges(&p)
}
