use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use bmx::files;
use bmx::parallel::bootstrap_parallel_with;
use bmx::verify;
use bmx_core::canon::are_isomorphic;
use bmx_core::catalogue::{BootstrapAbort, BootstrapLimits};
use bmx_core::construct;
use bmx_core::matroid::BinaryMatroid;
use bmx_core::minortest::{has_minor, MinorCache, MinorQuery, MinorTarget};
use bmx_core::polya::subset_orbit_profile;

#[derive(Parser)]
#[command(name = "bmx", version, about = "Simple binary matroid catalogues, counts and minor queries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and store catalogues
    Catalogue {
        #[command(subcommand)]
        action: CatalogueCmd,
    },
    /// Count isomorphism classes of simple binary matroids of rank <= N
    Count {
        #[arg(long)]
        rank: u8,
        /// One count per size instead of the total
        #[arg(long)]
        per_size: bool,
        /// Machine-readable comma-separated output
        #[arg(long)]
        csv: bool,
    },
    /// Run the reproduction checks and print a pass/fail ledger
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Worker threads for catalogue construction
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Test a stored matroid for a fixed excluded minor
    Minor {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
    },
    /// Decide isomorphism of two stored matroids
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Write a named matroid to a file
    Construct {
        #[arg(long)]
        name: String,
        #[arg(long)]
        param: Option<u8>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogueCmd {
    /// Grow a catalogue level by level and write it to a file
    Build {
        #[arg(long)]
        rank: u8,
        #[arg(long)]
        max_size: u8,
        /// Catalogue everything instead of the minor-free class
        #[arg(long)]
        no_exclusion: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Abort (exit 2, partial file written) past this many members
        #[arg(long)]
        member_limit: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
    Long,
}

impl From<LevelArg> for verify::Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Quick => verify::Level::Quick,
            LevelArg::Full => verify::Level::Full,
            LevelArg::Long => verify::Level::Long,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Ag32,
    F7,
    F7dual,
}

impl From<TargetArg> for MinorTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Ag32 => MinorTarget::Ag32,
            TargetArg::F7 => MinorTarget::F7,
            TargetArg::F7dual => MinorTarget::F7Dual,
        }
    }
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_ABORTED: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Catalogue { action: CatalogueCmd::Build { rank, max_size, no_exclusion, out, workers, member_limit } } => {
            cmd_catalogue_build(rank, max_size, !no_exclusion, &out, workers, member_limit)
        }
        Cmd::Count { rank, per_size, csv } => cmd_count(rank, per_size, csv),
        Cmd::VerifyPaper { level, workers } => cmd_verify(level.into(), workers),
        Cmd::Minor { input, target } => cmd_minor(&input, target.into()),
        Cmd::Iso { a, b } => cmd_iso(&a, &b),
        Cmd::Construct { name, param, out } => cmd_construct(&name, param, &out),
    }
}

fn usage(message: impl AsRef<str>) -> ExitCode {
    eprintln!("error: {}", message.as_ref());
    ExitCode::from(EXIT_USAGE)
}

fn worker_count(requested: Option<usize>) -> Result<usize, ExitCode> {
    match requested {
        Some(0) => Err(usage("--workers must be at least 1")),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, usize::from)),
    }
}

fn cmd_catalogue_build(
    rank: u8,
    max_size: u8,
    exclusion: bool,
    out: &std::path::Path,
    workers: Option<usize>,
    member_limit: Option<u64>,
) -> ExitCode {
    if !(1..=8).contains(&rank) {
        return usage(format!("--rank {rank} is outside 1..=8"));
    }
    if max_size as u32 > (1u32 << rank) - 1 {
        return usage(format!(
            "--max-size {max_size} exceeds the projective bound {} for rank {rank}",
            (1u32 << rank) - 1
        ));
    }
    let workers = match worker_count(workers) {
        Ok(w) => w,
        Err(code) => return code,
    };
    let limits = BootstrapLimits { max_members: member_limit };
    match bootstrap_parallel_with(rank, max_size, exclusion, workers, &limits) {
        Ok(cat) => {
            if let Err(e) = files::save_catalogue(&cat, out) {
                return usage(format!("writing {}: {e}", out.display()));
            }
            for (r, k, st) in cat.strata() {
                println!("r={r} k={k} n={}", st.len());
            }
            println!("total {} classes, written to {}", cat.total(), out.display());
            ExitCode::SUCCESS
        }
        Err(BootstrapAbort { partial }) => {
            if let Err(e) = files::save_catalogue(&partial, out) {
                return usage(format!("writing {}: {e}", out.display()));
            }
            eprintln!(
                "aborted at member limit; partial catalogue ({} classes, incomplete top level) written to {}",
                partial.total(),
                out.display()
            );
            ExitCode::from(EXIT_ABORTED)
        }
    }
}

fn cmd_count(rank: u8, per_size: bool, csv: bool) -> ExitCode {
    if rank > 8 {
        return usage(format!("--rank {rank} is outside 0..=8"));
    }
    // rank 0 leaves only the empty matroid; the group machinery starts
    // at rank 1
    let profile: Vec<BigUint> = if rank == 0 {
        vec![BigUint::from(1u8)]
    } else {
        subset_orbit_profile(rank).expect("rank is in range")
    };
    if per_size {
        if csv {
            println!("size,count");
            for (k, c) in profile.iter().enumerate() {
                println!("{k},{c}");
            }
        } else {
            for (k, c) in profile.iter().enumerate() {
                println!("size {k}: {c}");
            }
            println!("total: {}", profile.iter().sum::<BigUint>());
        }
    } else {
        let total = profile.iter().sum::<BigUint>();
        if csv {
            println!("{total}");
        } else {
            println!("rank <= {rank} classes: {total}");
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(level: verify::Level, workers: Option<usize>) -> ExitCode {
    let workers = match worker_count(workers) {
        Ok(w) => w,
        Err(code) => return code,
    };
    let report = verify::run(level, workers);
    println!("{report}");
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn env_cache() -> Result<MinorCache, ExitCode> {
    match std::env::var("BMX_CACHE_LIMIT") {
        Ok(v) => match v.parse::<usize>() {
            Ok(limit) => Ok(MinorCache::with_limit(limit)),
            Err(_) => Err(usage(format!("BMX_CACHE_LIMIT={v} is not a number"))),
        },
        Err(_) => Ok(MinorCache::new()),
    }
}

fn cmd_minor(input: &std::path::Path, target: MinorTarget) -> ExitCode {
    let m = match files::load_matroid(input) {
        Ok(m) => m,
        Err(e) => return usage(format!("reading {}: {e}", input.display())),
    };
    let mut cache = match env_cache() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let query = MinorQuery::new(target);
    println!("{}", if has_minor(&m, &query, &mut cache) { "yes" } else { "no" });
    ExitCode::SUCCESS
}

fn cmd_iso(a: &std::path::Path, b: &std::path::Path) -> ExitCode {
    let ma = match files::load_matroid(a) {
        Ok(m) => m,
        Err(e) => return usage(format!("reading {}: {e}", a.display())),
    };
    let mb = match files::load_matroid(b) {
        Ok(m) => m,
        Err(e) => return usage(format!("reading {}: {e}", b.display())),
    };
    println!("{}", if are_isomorphic(&ma, &mb) { "yes" } else { "no" });
    ExitCode::SUCCESS
}

fn cmd_construct(name: &str, param: Option<u8>, out: &std::path::Path) -> ExitCode {
    let need = |p: Option<u8>, what: &str| -> Result<u8, ExitCode> {
        p.ok_or_else(|| usage(format!("construct {name} needs --param {what}")))
    };
    let none = |p: Option<u8>| -> Result<(), ExitCode> {
        match p {
            None => Ok(()),
            Some(_) => Err(usage(format!("construct {name} takes no --param"))),
        }
    };
    let m: BinaryMatroid = match name {
        "pg" => match need(param, "<dimension, 0..=14>") {
            Ok(n) if n <= 14 => construct::pg(n),
            Ok(n) => return usage(format!("pg({n}) is out of range 0..=14")),
            Err(code) => return code,
        },
        "ag32" => match none(param) {
            Ok(()) => construct::ag32(),
            Err(code) => return code,
        },
        "f7" => match none(param) {
            Ok(()) => construct::f7(),
            Err(code) => return code,
        },
        "f7dual" => match none(param) {
            Ok(()) => construct::f7_dual(),
            Err(code) => return code,
        },
        "mk" => match need(param, "<vertex count, 1..=16>") {
            Ok(n) if (1..=16).contains(&n) => construct::mk(n),
            Ok(n) => return usage(format!("mk({n}) is out of range 1..=16")),
            Err(code) => return code,
        },
        "mk5plus" => match none(param) {
            Ok(()) => construct::mk5_plus(),
            Err(code) => return code,
        },
        "gpc_f7" => match need(param, "<rank, 3..=15>") {
            Ok(r) if (3..=15).contains(&r) => construct::gpc_f7(r),
            Ok(r) => return usage(format!("gpc_f7({r}) is out of range 3..=15")),
            Err(code) => return code,
        },
        "appendix5" => match need(param, "<index, 1..=3>") {
            Ok(k) if (1..=3).contains(&k) => construct::appendix5(k),
            Ok(k) => return usage(format!("appendix5({k}) is out of range 1..=3")),
            Err(code) => return code,
        },
        other => {
            return usage(format!(
                "unknown construction {other:?}; known: pg, ag32, f7, f7dual, mk, mk5plus, gpc_f7, appendix5"
            ))
        }
    };
    if let Err(e) = files::save_matroid(&m, out) {
        return usage(format!("writing {}: {e}", out.display()));
    }
    println!("wrote {name}: rank {}, {} points", m.rank(), m.len());
    ExitCode::SUCCESS
}
