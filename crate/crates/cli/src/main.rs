mod disk_store;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use evsc_core::fixtures::{self, GenusTag, Report};
use evsc_core::store::{MemoryStore, ValueStore};
use evsc_core::{par, InsertionIndex, Session, SpaceSpec};

use crate::disk_store::DiskStore;
use crate::output::Format;

const DEFAULT_FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

#[derive(Parser)]
#[command(
    name = "evsc",
    version,
    about = "Exact genus-0 and genus-1 invariants of weighted projective complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every admissible invariant up to a degree.
    Compute(ComputeArgs),
    /// Recompute stored tables and report mismatches.
    Verify(VerifyArgs),
    /// Inspect or clear the value cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Cache directory; values computed once are reused across runs.
    #[arg(long, env = "EVSC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ComputeArgs {
    /// Target as `a1,...,aN|k1,...,km`.
    #[arg(long)]
    space: String,
    /// 0, 1, or counts.
    #[arg(long, default_value = "1")]
    genus: String,
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    /// Keep only rows with these insertions, e.g. `2=2,3=1`.
    #[arg(long)]
    insertions: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// A table file or a directory of them.
    #[arg(long, default_value = DEFAULT_FIXTURES)]
    fixtures: PathBuf,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    /// Also check rows marked slow.
    #[arg(long)]
    include_slow: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CacheArgs {
    #[arg(long, env = "EVSC_CACHE_DIR")]
    cache_dir: PathBuf,
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Print every entry.
    List,
    /// Print one value.
    Get { key: String },
    /// Delete the cache file.
    Clear,
}

/// Failure with the process exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

fn computation(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 3,
        error: error.into(),
    }
}

type Outcome = Result<ExitCode, Failure>;

fn parse_insertions(s: &str) -> anyhow::Result<InsertionIndex> {
    let mut ins = InsertionIndex::empty();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (p, c) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected class=count, got {part:?}"))?;
        ins.add(
            p.trim().parse().context("insertion class")?,
            c.trim().parse().context("insertion count")?,
        );
    }
    Ok(ins)
}

fn open_store(dir: Option<&Path>) -> Result<Arc<dyn ValueStore>, Failure> {
    match dir {
        Some(d) => Ok(Arc::new(DiskStore::open(d).map_err(usage)?)),
        None => Ok(Arc::new(MemoryStore::new())),
    }
}

fn warn_degree(d: u32) {
    if d >= 4 {
        log::warn!("degree {d} requested; expect a long run and heavy memory use");
    }
}

fn compute(args: ComputeArgs) -> Outcome {
    let space = SpaceSpec::parse(&args.space).map_err(usage)?;
    let genus: GenusTag = args.genus.parse().map_err(|e: String| usage(anyhow!(e)))?;
    if args.max_degree == 0 {
        return Err(usage(anyhow!("--max-degree must be at least 1")));
    }
    let filter = args
        .insertions
        .as_deref()
        .map(parse_insertions)
        .transpose()
        .map_err(usage)?;
    warn_degree(args.max_degree);
    let store = open_store(args.common.cache_dir.as_deref())?;
    let session = Session::with_store(space, store);
    let mut report = par::with_threads(args.common.jobs, || {
        fixtures::compute_report(&session, genus, args.max_degree)
    })
    .map_err(computation)?;
    if let Some(f) = filter {
        report.results.retain(|r| r.insertions == f);
    }
    print!("{}", output::render(&report, args.common.format));
    Ok(ExitCode::SUCCESS)
}

fn tables(path: &Path) -> Result<Vec<(PathBuf, Report)>, Failure> {
    if !path.exists() {
        return Err(usage(anyhow!("fixtures not found at {}", path.display())));
    }
    let loaded = if path.is_dir() {
        fixtures::load_dir(path)
    } else {
        Report::load(path).map(|r| vec![(path.to_path_buf(), r)])
    };
    let loaded = loaded.map_err(usage)?;
    if loaded.is_empty() {
        return Err(usage(anyhow!("no tables under {}", path.display())));
    }
    Ok(loaded)
}

fn verify(args: VerifyArgs) -> Outcome {
    let loaded = tables(&args.fixtures)?;
    warn_degree(args.max_degree);
    let store = open_store(args.common.cache_dir.as_deref())?;
    let (mut checked, mut bad) = (0usize, 0usize);
    for (path, table) in &loaded {
        let space = SpaceSpec::parse(&table.space)
            .map_err(|e| usage(anyhow!("{}: {e}", path.display())))?;
        let session = Session::with_store(space, store.clone());
        let checks = par::with_threads(args.common.jobs, || {
            fixtures::verify_table(&session, table, args.max_degree, args.include_slow)
        })
        .map_err(|e| computation(anyhow!("{}: {e}", path.display())))?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let misses: Vec<_> = checks.iter().filter(|c| !c.matches()).collect();
        println!(
            "{name}: {}/{} match",
            checks.len() - misses.len(),
            checks.len()
        );
        for c in &misses {
            println!(
                "  MISMATCH d={} ins={} kind={}: expected {} computed {}",
                c.row.d,
                c.row.insertions.key(),
                c.row.kind,
                c.expected,
                c.computed
            );
        }
        checked += checks.len();
        bad += misses.len();
    }
    println!("{} cells checked, {bad} mismatches", checked);
    Ok(if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cache(args: CacheArgs) -> Outcome {
    let store = DiskStore::open(&args.cache_dir).map_err(usage)?;
    match args.action {
        CacheAction::List => {
            for (k, v) in store.entries() {
                println!("{k}\t{v}");
            }
        }
        CacheAction::Get { key } => match store.get(&key) {
            Some(v) => println!("{v}"),
            None => return Err(usage(anyhow!("no cached value for {key}"))),
        },
        CacheAction::Clear => {
            store.clear().map_err(computation)?;
            println!("cleared {}", store.path().display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Cache(a) => cache(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
