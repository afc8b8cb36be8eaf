//! Planar test instances with maximum degree at most 4.
//!
//! Random instances are subgraphs of planar hosts (quadrangulations grown by
//! face splitting, or grids), optionally with chords, parallel copies and
//! loops drawn inside faces, so planarity holds by construction.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use four_embed::planar::is_planar;
use four_embed::{Multigraph, VertexId};

/// Knobs for [`random_subgraph`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubgraphParams {
    /// Probability of keeping a host edge (subject to the degree cap).
    pub keep: f64,
    /// Probability of a chord inside each quadrilateral face.
    pub chord: f64,
    /// Probability of doubling a host edge.
    pub parallel: f64,
    /// Probability of a loop at each vertex.
    pub lp: f64,
}

impl Default for SubgraphParams {
    fn default() -> Self {
        SubgraphParams {
            keep: 0.85,
            chord: 0.3,
            parallel: 0.05,
            lp: 0.03,
        }
    }
}

/// A planar quadrangulation on `n >= 4` vertices with its face list.
pub fn quadrangulation(rng: &mut impl Rng, n: usize) -> (Vec<(u32, u32)>, Vec<[u32; 4]>) {
    assert!(n >= 4, "a quadrangulation needs four vertices");
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    let mut faces = vec![[0, 1, 2, 3], [0, 3, 2, 1]];
    for v in 4..n as u32 {
        let i = rng.gen_range(0..faces.len());
        let mut f = faces[i];
        f.rotate_left(rng.gen_range(0..2));
        let [a, b, c, d] = f;
        edges.push((a, v));
        edges.push((v, c));
        faces[i] = [a, b, c, v];
        faces.push([a, v, c, d]);
    }
    (edges, faces)
}

/// Keeps host edges in random order while both ends stay within degree 4.
fn degree_capped(rng: &mut impl Rng, n: usize, mut host: Vec<(u32, u32)>, keep: f64) -> Multigraph {
    host.shuffle(rng);
    let mut deg = vec![0usize; n];
    let mut kept = Vec::new();
    for (a, b) in host {
        let room = if a == b {
            deg[a as usize] + 2 <= 4
        } else {
            deg[a as usize] < 4 && deg[b as usize] < 4
        };
        if room && rng.gen_bool(keep) {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
            kept.push((a, b));
        }
    }
    let mut g = Multigraph::from_edges(&kept);
    for v in 0..n as u32 {
        g.add_vertex(VertexId(v));
    }
    g
}

/// Random subgraph of a random planar host on `n` vertices, relabelled by a
/// random permutation.
pub fn random_subgraph(rng: &mut impl Rng, n: usize, p: SubgraphParams) -> Multigraph {
    let mut host: Vec<(u32, u32)> = Vec::new();
    if n < 4 {
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                host.push((a, b));
            }
        }
    } else {
        let (edges, faces) = quadrangulation(rng, n);
        host = edges;
        for [a, b, c, d] in faces {
            if rng.gen_bool(p.chord) {
                host.push(if rng.gen_bool(0.5) { (a, c) } else { (b, d) });
            }
        }
    }
    let copies: Vec<(u32, u32)> = host
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(p.parallel))
        .collect();
    host.extend(copies);
    for v in 0..n as u32 {
        if rng.gen_bool(p.lp) {
            host.push((v, v));
        }
    }
    let g = degree_capped(rng, n, host, p.keep);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    relabel(&g, &perm)
}

fn relabel(g: &Multigraph, perm: &[u32]) -> Multigraph {
    let pairs: Vec<(u32, u32)> = g
        .edges()
        .map(|(_, a, b)| (perm[a.0 as usize], perm[b.0 as usize]))
        .collect();
    let mut out = Multigraph::from_edges(&pairs);
    for v in g.vertices() {
        out.add_vertex(VertexId(perm[v.0 as usize]));
    }
    out
}

/// Subgraph of a near-square grid on `n` vertices with random cell diagonals.
pub fn grid_instance(n: usize, keep: f64, diag: f64, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = (n as f64).sqrt().ceil() as usize;
    let id = |r: usize, c: usize| (r * w + c) as u32;
    let mut host = Vec::new();
    for i in 0..n {
        let (r, c) = (i / w, i % w);
        if c + 1 < w && i + 1 < n {
            host.push((id(r, c), id(r, c + 1)));
        }
        if i + w < n {
            host.push((id(r, c), id(r + 1, c)));
            if c + 1 < w && i + w + 1 < n && rng.gen_bool(diag) {
                host.push(if rng.gen_bool(0.5) {
                    (id(r, c), id(r + 1, c + 1))
                } else {
                    (id(r, c + 1), id(r + 1, c))
                });
            }
        }
    }
    degree_capped(&mut rng, n, host, keep)
}

/// Bounds for [`catalog`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub loops: bool,
    pub max_multiplicity: u8,
}

impl Default for CatalogBounds {
    fn default() -> Self {
        CatalogBounds {
            max_vertices: 6,
            max_edges: 10,
            loops: true,
            max_multiplicity: 4,
        }
    }
}

const MAXN: usize = 8;

/// Multiplicity matrix; the diagonal counts loops.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Small {
    n: usize,
    m: [[u8; MAXN]; MAXN],
}

impl Small {
    fn deg(&self, v: usize) -> usize {
        (0..self.n)
            .map(|u| self.m[v][u] as usize * if u == v { 2 } else { 1 })
            .sum()
    }

    fn code(&self, perm: &[usize]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                out.push(self.m[perm[i]][perm[j]]);
            }
        }
        out
    }

    /// Lexicographically largest code over vertex orders that sort by
    /// (degree, loops) descending.
    fn canonical(&self) -> Small {
        let inv: Vec<(usize, u8)> = (0..self.n).map(|v| (self.deg(v), self.m[v][v])).collect();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| inv[b].cmp(&inv[a]));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match blocks.last_mut() {
                Some(b) if inv[b[0]] == inv[v] => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        let mut perm = Vec::with_capacity(self.n);
        self.search(0, &mut blocks, &mut perm, &mut best);
        let (_, p) = best.expect("at least one order");
        let mut out = Small {
            n: self.n,
            m: [[0; MAXN]; MAXN],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                out.m[i][j] = self.m[p[i]][p[j]];
            }
        }
        out
    }

    fn search(
        &self,
        bi: usize,
        left: &mut Vec<Vec<usize>>,
        perm: &mut Vec<usize>,
        best: &mut Option<(Vec<u8>, Vec<usize>)>,
    ) {
        if perm.len() == self.n {
            let c = self.code(perm);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                *best = Some((c, perm.clone()));
            }
            return;
        }
        let bi = if left[bi].is_empty() { bi + 1 } else { bi };
        for k in 0..left[bi].len() {
            let v = left[bi].remove(k);
            perm.push(v);
            self.search(bi, left, perm, best);
            perm.pop();
            left[bi].insert(k, v);
        }
    }

    fn to_multigraph(self) -> Multigraph {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                for _ in 0..self.m[i][j] {
                    pairs.push((i as u32, j as u32));
                }
            }
        }
        let mut g = Multigraph::from_edges(&pairs);
        for v in 0..self.n as u32 {
            g.add_vertex(VertexId(v));
        }
        g
    }
}

/// Every connected planar multigraph within `bounds`, one per isomorphism
/// class, ordered by edge count and then by canonical code.
pub fn catalog(bounds: CatalogBounds) -> Vec<Multigraph> {
    assert!(bounds.max_vertices <= MAXN && bounds.max_vertices >= 1);
    let mut level = vec![Small {
        n: 1,
        m: [[0; MAXN]; MAXN],
    }];
    let mut out: Vec<Multigraph> = level.iter().map(|s| s.to_multigraph()).collect();
    for _ in 0..bounds.max_edges {
        let mut next: HashSet<Small> = HashSet::new();
        for g in &level {
            let degs: Vec<usize> = (0..g.n).map(|v| g.deg(v)).collect();
            for i in 0..g.n {
                for j in i..=g.n.min(bounds.max_vertices - 1) {
                    let mut c = *g;
                    if j == g.n {
                        if degs[i] >= 4 {
                            continue;
                        }
                        c.n += 1;
                    } else if i == j {
                        if !bounds.loops || degs[i] + 2 > 4 {
                            continue;
                        }
                    } else if degs[i] >= 4 || degs[j] >= 4 || g.m[i][j] >= bounds.max_multiplicity {
                        continue;
                    }
                    c.m[i][j] += 1;
                    if i != j {
                        c.m[j][i] += 1;
                    }
                    let canon = c.canonical();
                    if next.contains(&canon) {
                        continue;
                    }
                    if canon.n >= 5 && !is_planar(&canon.to_multigraph()) {
                        continue;
                    }
                    next.insert(canon);
                }
            }
        }
        let mut sorted: Vec<Small> = next.into_iter().collect();
        sorted.sort_by_cached_key(|s| (s.n, s.code(&(0..s.n).collect::<Vec<_>>())));
        out.extend(sorted.iter().map(|s| s.to_multigraph()));
        level = sorted;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use four_embed::connectivity::components;

    #[test]
    fn quadrangulation_is_planar_and_bipartite_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (edges, faces) = quadrangulation(&mut rng, 30);
        assert_eq!(edges.len(), 2 * 30 - 4);
        assert_eq!(faces.len(), 30 - 2);
        assert!(is_planar(&Multigraph::from_edges(&edges)));
    }

    #[test]
    fn random_instances_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=12 {
            for _ in 0..50 {
                let g = random_subgraph(&mut rng, n, SubgraphParams::default());
                assert_eq!(g.vertex_count(), n);
                assert!(g.max_degree() <= 4);
                assert!(is_planar(&g));
            }
        }
    }

    #[test]
    fn grid_is_deterministic() {
        let a = grid_instance(300, 0.8, 0.2, 9);
        assert_eq!(a, grid_instance(300, 0.8, 0.2, 9));
        assert_eq!(a.vertex_count(), 300);
        assert!(a.max_degree() <= 4);
        assert!(is_planar(&a));
    }

    #[test]
    fn small_catalog_counts() {
        // connected simple graphs with at most 4 vertices and 3 edges:
        // K1, K2, P3, K3, P4, star K1,3
        let simple = catalog(CatalogBounds {
            max_vertices: 4,
            max_edges: 3,
            loops: false,
            max_multiplicity: 1,
        });
        assert_eq!(simple.len(), 6);
        // two vertices, up to four edges between them or loops
        let two = catalog(CatalogBounds {
            max_vertices: 2,
            max_edges: 2,
            loops: true,
            max_multiplicity: 4,
        });
        // K1, loop, K2, double loop, K2 double, K2 + loop
        assert_eq!(two.len(), 6);
        for g in simple.iter().chain(&two) {
            assert_eq!(components(g).len(), 1);
        }
    }
}
