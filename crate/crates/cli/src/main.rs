//! `inttree`: exact spectra of trees, integral-tree search and verification
//! suites.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for usage,
//! parse and I/O errors. Machine-readable output goes to stdout; progress and
//! summaries go to stderr.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use inttree_core::reduction::{pendant_report, reduce_with_trace, reduced_census};
use inttree_core::search::{run_search, Filter, SearchConfig};
use inttree_core::spectra::{nullity_matching, TreeSpectrum};
use inttree_core::tree::{enumerate_free_trees, CanonicalCode, Shard, Tree};
use inttree_core::verifier::{run_suite, SUITES};

#[derive(Parser)]
#[command(name = "inttree", version, about = "Exact spectral analysis of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the characteristic polynomial (ascending coefficients) and its
    /// factored form.
    Charpoly(TreeInput),
    /// Print the spectrum summary as JSON.
    Spectrum(TreeInput),
    /// Print the nullity.
    Nullity(TreeInput),
    /// Strip pendant P2s down to the reduced core, printing each step.
    Reduce(TreeInput),
    /// Enumerate free trees and stream those passing the filters as JSONL.
    Search(SearchArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Count trees per order, or list reduced trees with a given m.
    Census(CensusArgs),
}

#[derive(Args)]
struct TreeInput {
    /// Tree file: vertex count on the first line, then one `u v` edge per line.
    #[arg(conflicts_with = "code", required_unless_present = "code")]
    file: Option<PathBuf>,
    /// Inline canonical code (comma-separated level sequence).
    #[arg(long)]
    code: Option<String>,
}

impl TreeInput {
    fn load(&self) -> anyhow::Result<Tree> {
        if let Some(code) = &self.code {
            let code =
                CanonicalCode::from_str(code).with_context(|| format!("invalid code {code:?}"))?;
            return Ok(Tree::from_code(&code)?);
        }
        let path = self.file.as_ref().expect("clap requires file or code");
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Tree::parse_text(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    min_order: u64,
    /// Keep only trees with this nullity.
    #[arg(long)]
    nullity: Option<usize>,
    /// Keep only integral trees.
    #[arg(long)]
    integral: bool,
    /// Keep only reduced trees (no pendant P2).
    #[arg(long)]
    reduced: bool,
    /// Enumerate only shard `i` of `m` (0-based).
    #[arg(long, default_value = "0/1")]
    shard: Shard,
    /// Catalog file (JSONL); records go to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cursor file to resume from and checkpoint to; requires --out.
    #[arg(long, requires = "out")]
    resume: Option<PathBuf>,
    /// Trees enumerated between cursor writes.
    #[arg(long, default_value_t = SearchConfig::DEFAULT_CHECKPOINT)]
    checkpoint_every: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded random instances per randomized check.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Write full verdict records (with certificates and timings) as JSONL.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=30))]
    max_order: u64,
    /// List the reduced trees with exactly this many eigenvalues in (-1, 1).
    #[arg(long)]
    m: Option<usize>,
}

enum Failure {
    Verification,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Charpoly(input) => {
            let s = TreeSpectrum::of(&input.load()?);
            writeln!(out, "{}", s.char_poly).map_err(anyhow::Error::from)?;
            writeln!(out, "factored: {}", s.summary.factored()).map_err(anyhow::Error::from)?;
        }
        Command::Spectrum(input) => {
            let s = TreeSpectrum::of(&input.load()?);
            let value = serde_json::json!({
                "code": s.code,
                "order": s.code.order(),
                "char_poly": s.char_poly,
                "factored": s.summary.factored(),
                "integral": s.is_integral(),
                "nullity": s.nullity,
                "m": s.m_value,
                "integer_eigenvalues": s.summary.integer_roots.iter()
                    .rev()
                    .map(|(k, m)| (k.to_string(), m))
                    .collect::<Vec<_>>(),
                "residual": s.summary.residual,
            });
            writeln!(out, "{value}").map_err(anyhow::Error::from)?;
        }
        Command::Nullity(input) => {
            writeln!(out, "{}", nullity_matching(&input.load()?)).map_err(anyhow::Error::from)?;
        }
        Command::Reduce(input) => reduce(&input.load()?, &mut out)?,
        Command::Search(args) => search(args, &mut out)?,
        Command::Verify(args) => return verify(args, &mut out),
        Command::Census(args) => census(args, &mut out)?,
    }
    Ok(())
}

fn reduce(tree: &Tree, out: &mut dyn Write) -> anyhow::Result<()> {
    let (core, steps) = reduce_with_trace(tree);
    writeln!(out, "core: {}", core.canonical_code())?;
    writeln!(out, "strips: {}", steps.len())?;
    for (i, s) in steps.iter().enumerate() {
        writeln!(
            out,
            "{}: strip at vertex {} of {} (m {} -> {})",
            i + 1,
            s.vertex,
            s.code_before,
            s.m_before,
            s.m_after
        )?;
    }
    Ok(())
}

fn search(args: SearchArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    if args.min_order > args.max_order {
        bail!("--min-order exceeds --max-order");
    }
    let config = SearchConfig {
        min_order: args.min_order as usize,
        max_order: args.max_order as usize,
        filter: Filter {
            nullity: args.nullity,
            integral_only: args.integral,
            reduced_only: args.reduced,
        },
        shard: args.shard,
        out: args.out,
        resume: args.resume,
        checkpoint_every: args.checkpoint_every,
        stop_after: None,
    };
    eprintln!(
        "searching orders {}..={} (shard {}/{})",
        config.min_order, config.max_order, config.shard.index, config.shard.count
    );
    let summary = run_search(&config, out)?;
    out.flush()?;
    eprintln!("examined {} trees", summary.examined);
    eprintln!("order  found");
    for (order, count) in &summary.found {
        eprintln!("{order:>5}  {count}");
    }
    eprintln!("total  {}", summary.found.values().sum::<u64>());
    Ok(())
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let records = run_suite(&args.suite, args.seed, args.trials).map_err(anyhow::Error::from)?;
    let mut jsonl = match &args.out {
        Some(path) => Some(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => None,
    };
    let mut failed = 0usize;
    let io = |e: io::Error| Failure::Usage(e.into());
    for r in &records {
        if !r.passed() {
            failed += 1;
        }
        writeln!(
            out,
            "{}\t{}\t{}",
            if r.passed() { "pass" } else { "FAIL" },
            r.check,
            r.instance
        )
        .map_err(io)?;
        if let Some(w) = jsonl.as_mut() {
            serde_json::to_writer(&mut *w, r).map_err(anyhow::Error::from)?;
            writeln!(w).map_err(io)?;
        }
    }
    if let Some(mut w) = jsonl {
        w.flush().map_err(io)?;
    }
    writeln!(out, "{} verdicts, {} failed", records.len(), failed).map_err(io)?;
    eprintln!(
        "suite {}: {} of {} passed",
        args.suite,
        records.len() - failed,
        records.len()
    );
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn census(args: CensusArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let cap = args.max_order as usize;
    if let Some(m) = args.m {
        for t in reduced_census(m, cap) {
            writeln!(out, "{}\t{}", t.order(), t.canonical_code())?;
        }
        return Ok(());
    }
    writeln!(out, "order\ttrees\treduced\tintegral")?;
    for n in 1..=cap {
        let (mut trees, mut reduced, mut integral) = (0u64, 0u64, 0u64);
        for t in enumerate_free_trees(n, None)? {
            trees += 1;
            reduced += u64::from(pendant_report(&t).is_reduced);
            integral += u64::from(TreeSpectrum::of(&t).is_integral());
        }
        writeln!(out, "{n}\t{trees}\t{reduced}\t{integral}")?;
    }
    Ok(())
}
