//! `uhitlab`: command-line front end.
//!
//! Exit codes: 0 success or "true", 2 a semantic "false" (not UHIT, not
//! isomorphic, criterion failed, nothing found), 1 any error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use uhitlab::catalog::{read_catalog, write_entry, CatalogEntry, EntryOptions, Provenance};
use uhitlab::dimacs::{read_dimacs, to_dimacs, ParseMode};
use uhitlab::factor::enumerate_factors_bounded;
use uhitlab::limits::Limits;
use uhitlab::report::{analyse, ReportOptions};
use uhitlab::search::{
    construct_dt, construct_km, enumerate_uhit_with_limit, random_uhit, DtKind, EnumerationTask,
    NfsSearch, OpsMix, DEFAULT_BREADTH_BOUND, DEFAULT_DEPTH_BOUND,
};
use uhitlab::singular::snf;
use uhitlab::verify::{run_suite, Suite};
use uhitlab::{is_isomorphic, ClauseSet, FlipOutcome};

#[derive(Parser)]
#[command(name = "uhitlab", version, about = "Unsatisfiable hitting clause-sets toolkit")]
struct Cli {
    /// Reject malformed DIMACS instead of warning.
    #[arg(long, global = true)]
    strict: bool,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a DIMACS file (exit 2 if it is not UHIT).
    Check {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also run the nfs flip search on clause-irreducible input.
        #[arg(long)]
        flip_search: bool,
    },
    /// Run an acceptance suite: `core` or `extended`.
    Verify {
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance as DIMACS.
    Generate {
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Variable count for `full`, target count for `random`.
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        delta_cap: Option<i64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate UHIT up to isomorphism into a catalogue.
    Enumerate {
        #[arg(long)]
        delta: i64,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        nonsingular: bool,
        /// Record clause-irreducibility.
        #[arg(long)]
        irreducibility: bool,
        /// Record the flip-search outcome of irreducible classes.
        #[arg(long)]
        nfs: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Print the singular normal form as DIMACS.
    Snf {
        path: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// List clause-factors, one JSON record per line.
    Factors {
        path: PathBuf,
        /// Include the trivial factors.
        #[arg(long)]
        all: bool,
    },
    /// Search for a clause-reducible instance by nfs-flips (exit 2 if none found).
    Flipsearch {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BOUND)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_BREADTH_BOUND)]
        breadth: usize,
        /// Save the search state here after every level.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a checkpoint instead of reading `path`.
        #[arg(long, conflicts_with = "path")]
        resume: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide isomorphism of two DIMACS files (exit 2 if not isomorphic).
    Iso { a: PathBuf, b: PathBuf },
    /// Re-derive every record of a catalogue (exit 2 on any mismatch).
    Reverify { catalog: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Dt2,
    Dt3,
    Full,
    Km,
    Random,
}

#[derive(Args)]
struct OutArg {
    /// Output file; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

impl OutArg {
    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

/// Outcome of a command: `true` maps to exit 0, `false` to exit 2.
type Verdict = anyhow::Result<bool>;

fn load(path: &Path, mode: ParseMode) -> anyhow::Result<ClauseSet> {
    read_dimacs(path, mode).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::new()
        .filter_level(match cli.verbose {
            0 => log::LevelFilter::Warn,
            1 => log::LevelFilter::Info,
            _ => log::LevelFilter::Debug,
        })
        .parse_default_env()
        .init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Verdict {
    let mode = if cli.strict { ParseMode::Strict } else { ParseMode::Lenient };
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Check { path, json, flip_search } => {
            let f = load(&path, mode)?;
            let opts = ReportOptions {
                factor_bound: limits.factor_bound,
                oracle_bound: limits.oracle_bound,
                flip_search: flip_search.then_some((DEFAULT_DEPTH_BOUND, DEFAULT_BREADTH_BOUND)),
                ..ReportOptions::default()
            };
            let report = analyse(&f, &path.display().to_string(), &opts)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                let m = &report.measures;
                println!("file: {}", report.input_id);
                println!("n = {}, c = {}, deficiency = {}", m.n, m.c, m.delta);
                println!("hitting: {}, uhit: {}, dyadic sum: {}", report.hitting, report.uhit, report.dyadic_sum);
                match report.satisfiable {
                    Some(sat) => println!("satisfiable: {sat}"),
                    None => println!("satisfiable: unknown (above the oracle bound)"),
                }
                println!(
                    "singular variables: {} (1-singular {})",
                    report.singularity.nsv(),
                    report.singularity.nosv()
                );
                if let Some(s) = &report.snf {
                    println!("snf: {} (id {}), singularity index {}", s.canonical, s.canonical_id, s.singularity_index);
                }
                match (report.irreducible, report.nontrivial_factor_count) {
                    (Some(irr), Some(k)) => println!("clause-irreducible: {irr} ({k} nontrivial factors)"),
                    _ => println!("clause-irreducible: unknown"),
                }
                println!("fs-pairs: {}, nfs-pairs: {}", report.fs_pairs, report.nfs_pairs);
                if let Some(fs) = &report.flip_search {
                    println!("flip search: {:?} after {} flips", fs.outcome, fs.flips);
                }
            }
            Ok(report.uhit)
        }
        Command::Verify { suite, json } => {
            let suite: Suite = suite.parse()?;
            let results = run_suite(suite);
            let passed = results.iter().all(|r| r.passed);
            if json {
                println!("{}", serde_json::to_string_pretty(&results)?);
            } else {
                for r in &results {
                    println!("{r}");
                }
                let ok = results.iter().filter(|r| r.passed).count();
                println!("suite {suite}: {ok}/{} passed", results.len());
            }
            Ok(passed)
        }
        Command::Generate { kind, m, n, seed, delta_cap, out } => {
            let f = match kind {
                GenKind::Dt2 => construct_dt(DtKind::Dt2),
                GenKind::Dt3 => construct_dt(DtKind::Dt3),
                GenKind::Full => construct_dt(DtKind::Full(n as u32)),
                GenKind::Km => construct_km(m)?,
                GenKind::Random => {
                    let mix = OpsMix { delta_cap, ..OpsMix::default() };
                    random_uhit(seed, n, &mix).instance
                }
            };
            let mut w = out.writer()?;
            w.write_all(to_dimacs(&f).as_bytes())?;
            w.flush()?;
            Ok(true)
        }
        Command::Enumerate { delta, nmax, nonsingular, irreducibility, nfs, out } => {
            let mut task = EnumerationTask::new(nmax, delta);
            if nonsingular {
                task = task.nonsingular();
            }
            let found = enumerate_uhit_with_limit(&task, limits.work_limit)?;
            let opts = EntryOptions {
                irreducibility,
                nfs_bounds: nfs.then_some((DEFAULT_DEPTH_BOUND, DEFAULT_BREADTH_BOUND)),
            };
            let mut w = out.writer()?;
            for f in &found {
                write_entry(&mut w, &CatalogEntry::new(f, Provenance::Enumeration(task), opts)?)?;
            }
            w.flush()?;
            log::info!("{} entries", found.len());
            Ok(true)
        }
        Command::Snf { path, out } => {
            let f = load(&path, mode)?;
            let nf = snf(&f)?;
            let mut w = out.writer()?;
            writeln!(w, "c singularity index {}", nf.singularity_index)?;
            w.write_all(to_dimacs(&nf.normal_form).as_bytes())?;
            w.flush()?;
            Ok(true)
        }
        Command::Factors { path, all } => {
            let f = load(&path, mode)?;
            let factors = enumerate_factors_bounded(&f, !all, limits.factor_bound)?;
            let mut w = BufWriter::new(io::stdout().lock());
            for x in &factors {
                writeln!(w, "{}", serde_json::to_string(x)?)?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Flipsearch { path, depth, breadth, checkpoint, resume, json } => {
            let mut search = match (&resume, &path) {
                (Some(r), _) => NfsSearch::resume(r)?,
                (None, Some(p)) => NfsSearch::new(&load(p, mode)?, depth, breadth)?,
                (None, None) => bail!("give an input file or --resume"),
            };
            if let Some(c) = checkpoint {
                search = search.with_checkpoint(c);
            }
            let path = search.run()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&path)?);
            } else {
                println!("outcome: {:?}", path.outcome);
                for (i, s) in path.steps.iter().enumerate() {
                    let [a, b] = s.pair.clauses();
                    println!("flip {}: {a} {b}", i + 1);
                }
                print!("{}", to_dimacs(&path.terminal));
            }
            Ok(path.outcome == FlipOutcome::FoundReducible)
        }
        Command::Iso { a, b } => {
            let same = is_isomorphic(&load(&a, mode)?, &load(&b, mode)?);
            println!("{}", if same { "isomorphic" } else { "not isomorphic" });
            Ok(same)
        }
        Command::Reverify { catalog } => {
            let file = File::open(&catalog).with_context(|| format!("opening {}", catalog.display()))?;
            let entries = read_catalog(BufReader::new(file))?;
            let mut ok = true;
            for (i, e) in entries.iter().enumerate() {
                if !e.reverify()? {
                    println!("entry {} does not re-verify", i + 1);
                    ok = false;
                }
            }
            println!("{} entries checked", entries.len());
            Ok(ok)
        }
    }
}
