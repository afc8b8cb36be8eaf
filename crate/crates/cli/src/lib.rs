//! Command line front end: file formats, the `check`, `verify`, `selftest`
//! and `generate` commands, and the instance generator.
//!
//! Exit codes: 0 embeddable / verified / passed, 1 not embeddable / rejected /
//! failed, 2 usage or input error.

pub mod format;
pub mod generate;
pub mod report;
pub mod selftest;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use four_embed::oracle::{oracle_embeddable, OracleBudget, OracleOutcome};
use four_embed::witness::{simplify_witness, verify, VerifyMode, Violation};
use four_embed::{decide, Multigraph, Verdict};

use format::{align_edges, parse_edge_list, serialize_edge_list, to_dot};
use report::{CertificateReport, Report, WitnessReport};
use selftest::{run_selftest, SelftestConfig};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Worker count for `selftest`.
pub const THREADS_ENV: &str = "FOUR_EMBED_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "four-embed",
    version,
    about = "Is a planar graph contained in a 4-regular planar graph?"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an edge-list file.
    Check(CheckArgs),
    /// Check that G is a 4-regular planar supergraph of H.
    Verify(VerifyArgs),
    /// Compare the decision procedure with exhaustive search.
    Selftest(SelftestArgs),
    /// Print a random planar instance with maximum degree 4.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    /// Print the 4-regular supergraph.
    #[arg(long)]
    pub witness: bool,
    /// Make the supergraph simple (input must be simple).
    #[arg(long)]
    pub simple: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Write the supergraph in DOT format.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Use exhaustive search instead of the decision procedure.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub h: PathBuf,
    pub g: PathBuf,
    /// Require a simple supergraph.
    #[arg(long)]
    pub simple: bool,
    /// Require V(G) = V(H).
    #[arg(long, conflicts_with = "simple")]
    pub same_vertices: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the exhaustive small catalog.
    #[arg(long)]
    pub no_catalog: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use a grid host instead of a quadrangulation.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, default_value_t = 0.85)]
    pub keep: f64,
    /// Chord (quadrangulation) or diagonal (grid) probability.
    #[arg(long, default_value_t = 0.3)]
    pub chords: f64,
}

pub fn read_graph(path: &Path) -> Result<Multigraph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn is_simple(h: &Multigraph) -> bool {
    !h.has_loops() && h.edges().all(|(_, a, b)| h.multiplicity(a, b) == 1)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Check(a) => cmd_check(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Selftest(a) => cmd_selftest(&a, threads_from_env(), out),
        Command::Generate(a) => cmd_generate(&a, out),
    }
}

pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<u8> {
    let h = read_graph(&a.input)?;
    if a.simple && !is_simple(&h) {
        bail!("--simple needs a simple input graph (no loops or parallel edges)");
    }
    let need_witness = a.witness || a.simple || a.dot.is_some();
    let (witness, certificate) = if a.oracle {
        match oracle_embeddable(&h, OracleBudget::default()) {
            OracleOutcome::Sat(g) => (Some(g), None),
            OracleOutcome::Unsat => (None, Some(CertificateReport::oracle())),
            OracleOutcome::OverBudget => bail!("input is too large for exhaustive search"),
        }
    } else {
        match decide(&h, need_witness)? {
            Verdict::Embeddable(w) => (Some(w.unwrap_or_default()), None),
            Verdict::NotEmbeddable(c) => (None, Some(CertificateReport::new(&c))),
        }
    };
    let embeddable = certificate.is_none();
    let witness = match witness {
        Some(w) if a.simple => Some(simplify_witness(&w, &h)?),
        w => w,
    };
    if let Some(path) = &a.dot {
        let g = witness.as_ref().unwrap_or(&h);
        fs::write(path, to_dot(g, &h))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let shown = witness.filter(|_| a.witness || a.simple);
    match a.format {
        OutputFormat::Json => {
            let r = Report {
                verdict: if embeddable {
                    "EMBEDDABLE"
                } else {
                    "NOT_EMBEDDABLE"
                }
                .to_string(),
                certificate,
                witness: shown.as_ref().map(WitnessReport::new),
            };
            serde_json::to_writer_pretty(&mut *out, &r)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            if embeddable {
                writeln!(out, "EMBEDDABLE")?;
            } else {
                let c = certificate.expect("negative answer");
                writeln!(out, "NOT_EMBEDDABLE")?;
                writeln!(out, "certificate: {} ({})", c.kind, c.message)?;
            }
            if let Some(w) = &shown {
                let added = w.edge_ids().filter(|&e| !h.has_edge(e)).count();
                writeln!(
                    out,
                    "# witness: {} vertices, {} edges, {} added",
                    w.vertex_count(),
                    w.edge_count(),
                    added
                )?;
                out.write_all(serialize_edge_list(w).as_bytes())?;
            }
        }
    }
    Ok(if embeddable { EXIT_YES } else { EXIT_NO })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let h = read_graph(&a.h)?;
    let g = align_edges(&h, &read_graph(&a.g)?);
    let mode = if a.simple {
        VerifyMode::Simple
    } else {
        VerifyMode::Multigraph
    };
    // a supergraph may carry extra vertices unless asked otherwise
    let bad: Vec<_> = verify(&g, &h, mode)
        .into_iter()
        .filter(|v| a.same_vertices || !matches!(v, Violation::ExtraVertex(_)))
        .collect();
    if bad.is_empty() {
        writeln!(out, "OK")?;
        return Ok(EXIT_YES);
    }
    for v in &bad {
        writeln!(out, "violation: {v}")?;
    }
    Ok(EXIT_NO)
}

pub fn cmd_selftest(a: &SelftestArgs, threads: usize, out: &mut dyn Write) -> Result<u8> {
    if a.max_n == 0 {
        bail!("--max-n must be positive");
    }
    let cfg = SelftestConfig {
        max_n: a.max_n,
        samples: a.samples,
        seed: a.seed,
        threads,
        catalog: !a.no_catalog,
    };
    let s = run_selftest(&cfg, &|h: &Multigraph| decide(h, true));
    write!(out, "{s}")?;
    Ok(if s.passed() { EXIT_YES } else { EXIT_NO })
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<u8> {
    use rand::SeedableRng;
    if !(0.0..=1.0).contains(&a.keep) || !(0.0..=1.0).contains(&a.chords) {
        bail!("probabilities must lie in [0, 1]");
    }
    let g = if a.grid {
        generate::grid_instance(a.n, a.keep, a.chords, a.seed)
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
        let p = generate::SubgraphParams {
            keep: a.keep,
            chord: a.chords,
            ..Default::default()
        };
        generate::random_subgraph(&mut rng, a.n, p)
    };
    out.write_all(serialize_edge_list(&g).as_bytes())?;
    Ok(EXIT_YES)
}
