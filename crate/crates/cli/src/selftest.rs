//! Cross-checks the decision procedure against exhaustive search.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use four_embed::oracle::{oracle_embeddable, OracleBudget};
use four_embed::witness::{simplify_witness, verify, VerifyMode};
use four_embed::{Multigraph, Verdict};

use crate::generate::{catalog, random_subgraph, CatalogBounds, SubgraphParams};

/// Largest vertex count of the built-in catalog.
pub const CATALOG_MAX_VERTICES: usize = 6;
pub const CATALOG_MAX_EDGES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestConfig {
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
    pub catalog: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_n: 7,
            samples: 2000,
            seed: 0,
            threads: 1,
            catalog: true,
        }
    }
}

/// The procedure under test.
pub type Decider = dyn Fn(&Multigraph) -> four_embed::Result<Verdict> + Sync;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Outcome {
    embeddable: bool,
    certificate: Option<&'static str>,
    witness_checked: bool,
    simple_checked: bool,
    /// First problem found, if any.
    problem: Option<String>,
    digest: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub seed: u64,
    pub max_n: usize,
    pub catalog_instances: usize,
    pub random_instances: usize,
    pub embeddable: usize,
    pub not_embeddable: usize,
    pub certificates: BTreeMap<&'static str, usize>,
    pub witnesses_verified: usize,
    pub simple_witnesses_verified: usize,
    pub disagreements: usize,
    /// `(instance index, instance, problem)` for the first few failures.
    pub failures: Vec<(usize, String, String)>,
    pub digest: u64,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "max-n: {}", self.max_n)?;
        writeln!(f, "catalog instances: {}", self.catalog_instances)?;
        writeln!(f, "random instances: {}", self.random_instances)?;
        writeln!(f, "embeddable: {}", self.embeddable)?;
        writeln!(f, "not embeddable: {}", self.not_embeddable)?;
        for (k, n) in &self.certificates {
            writeln!(f, "  {k}: {n}")?;
        }
        writeln!(f, "witnesses verified: {}", self.witnesses_verified)?;
        writeln!(
            f,
            "simple witnesses verified: {}",
            self.simple_witnesses_verified
        )?;
        writeln!(f, "disagreements: {}", self.disagreements)?;
        for (i, inst, why) in &self.failures {
            writeln!(f, "  #{i} [{inst}] {why}")?;
        }
        writeln!(f, "digest: {:016x}", self.digest)
    }
}

fn fnv(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;

fn inline(g: &Multigraph) -> String {
    let mut s = format!("n={}", g.vertex_count());
    for (_, a, b) in g.edges() {
        let _ = write!(s, " {a}-{b}");
    }
    s
}

fn is_simple(h: &Multigraph) -> bool {
    !h.has_loops() && h.edges().all(|(_, a, b)| h.multiplicity(a, b) == 1)
}

fn check(h: &Multigraph, decider: &Decider) -> Outcome {
    let expected = oracle_embeddable(h, OracleBudget::unbounded()).is_sat();
    let mut out = Outcome::default();
    let verdict = match decider(h) {
        Ok(v) => v,
        Err(e) => {
            out.problem = Some(format!("error: {e}"));
            return out;
        }
    };
    out.embeddable = verdict.is_embeddable();
    if let Verdict::NotEmbeddable(c) = &verdict {
        out.certificate = Some(c.name());
    }
    out.digest = fnv(
        FNV_OFFSET,
        format!("{}|{}|{:?}", inline(h), out.embeddable, out.certificate).as_bytes(),
    );
    if out.embeddable != expected {
        out.problem = Some(format!(
            "verdict {} but exhaustive search says {}",
            out.embeddable, expected
        ));
        return out;
    }
    let Verdict::Embeddable(w) = verdict else {
        return out;
    };
    let Some(w) = w else {
        out.problem = Some("no witness".into());
        return out;
    };
    let bad = verify(&w, h, VerifyMode::Multigraph);
    if !bad.is_empty() || w.vertex_set() != h.vertex_set() {
        out.problem = Some(format!(
            "witness rejected: {}",
            bad.first().map_or("vertex set".into(), |v| v.to_string())
        ));
        return out;
    }
    out.witness_checked = true;
    out.digest = fnv(out.digest, inline(&w).as_bytes());
    if is_simple(h) {
        let added = w.edge_ids().filter(|&e| !h.has_edge(e)).count();
        let ok = simplify_witness(&w, h)
            .map(|s| {
                verify(&s, h, VerifyMode::Simple).is_empty()
                    && s.vertex_count() == h.vertex_count() + 6 * added
            })
            .unwrap_or(false);
        if !ok {
            out.problem = Some("simple witness rejected".into());
            return out;
        }
        out.simple_checked = true;
    }
    out
}

/// The `i`-th random instance of a run; independent of thread count.
pub fn random_instance(seed: u64, max_n: usize, i: usize) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let n = rng.gen_range(1..=max_n.max(1));
    let p = SubgraphParams {
        keep: rng.gen_range(0.75..=1.0),
        chord: rng.gen_range(0.4..=1.0),
        parallel: rng.gen_range(0.0..=0.15),
        lp: rng.gen_range(0.0..=0.1),
    };
    random_subgraph(&mut rng, n, p)
}

pub fn selftest_catalog(max_n: usize) -> Vec<Multigraph> {
    catalog(CatalogBounds {
        max_vertices: max_n.clamp(1, CATALOG_MAX_VERTICES),
        max_edges: CATALOG_MAX_EDGES,
        ..CatalogBounds::default()
    })
}

pub fn run_selftest(cfg: &SelftestConfig, decider: &Decider) -> Summary {
    let fixed = if cfg.catalog {
        selftest_catalog(cfg.max_n)
    } else {
        Vec::new()
    };
    let total = fixed.len() + cfg.samples;
    let instance = |i: usize| {
        if i < fixed.len() {
            fixed[i].clone()
        } else {
            random_instance(cfg.seed, cfg.max_n, i - fixed.len())
        }
    };
    let next = AtomicUsize::new(0);
    let mut results: Vec<(usize, Outcome)> = std::thread::scope(|s| {
        let workers: Vec<_> = (0..cfg.threads.max(1))
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= total {
                            break;
                        }
                        mine.push((i, check(&instance(i), decider)));
                    }
                    mine
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("worker panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.0);

    let mut sum = Summary {
        seed: cfg.seed,
        max_n: cfg.max_n,
        catalog_instances: fixed.len(),
        random_instances: cfg.samples,
        digest: FNV_OFFSET,
        ..Summary::default()
    };
    for (i, o) in &results {
        if o.embeddable {
            sum.embeddable += 1;
        } else {
            sum.not_embeddable += 1;
        }
        if let Some(c) = o.certificate {
            *sum.certificates.entry(c).or_insert(0) += 1;
        }
        sum.witnesses_verified += o.witness_checked as usize;
        sum.simple_witnesses_verified += o.simple_checked as usize;
        if let Some(p) = &o.problem {
            sum.disagreements += 1;
            if sum.failures.len() < 10 {
                sum.failures.push((*i, inline(&instance(*i)), p.clone()));
            }
        }
        sum.digest = fnv(sum.digest, &o.digest.to_le_bytes());
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use four_embed::{decide, Certificate, VertexId};

    fn real(h: &Multigraph) -> four_embed::Result<Verdict> {
        decide(h, true)
    }

    #[test]
    fn small_run_passes_and_is_thread_independent() {
        let cfg = SelftestConfig {
            max_n: 5,
            samples: 200,
            seed: 3,
            threads: 1,
            catalog: false,
        };
        let a = run_selftest(&cfg, &real);
        assert!(a.passed(), "{a}");
        let b = run_selftest(&SelftestConfig { threads: 4, ..cfg }, &real);
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn injected_fault_is_caught() {
        let liar = |_: &Multigraph| {
            Ok(Verdict::NotEmbeddable(Certificate::DegreeTooHigh(
                VertexId(0),
            )))
        };
        let cfg = SelftestConfig {
            max_n: 4,
            samples: 30,
            seed: 1,
            threads: 2,
            catalog: false,
        };
        let s = run_selftest(&cfg, &liar);
        assert!(!s.passed());
        assert!(!s.failures.is_empty());
    }

    #[test]
    fn instances_are_reproducible() {
        assert_eq!(random_instance(5, 7, 11), random_instance(5, 7, 11));
        assert!(random_instance(5, 7, 11).vertex_count() <= 7);
    }
}
