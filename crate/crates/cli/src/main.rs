use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use segrelab::groebner::{DiskStore, GbStore};
use segrelab::hilbert::HsConfig;
use segrelab::invariants::InvariantConfig;
use segrelab::session::{parse_session, run, FieldSpec, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Runs a session file and prints its report.
#[derive(Debug, Parser)]
#[command(name = "segrelab", version)]
struct Args {
    /// Session file; `-` reads standard input.
    session: PathBuf,

    /// `qq` or `gf:<p>`; replaces the field of every ring declaration.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,

    /// Defaults to SEGRELAB_SEED, else a random seed (echoed in the report).
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, default_value_t = 2)]
    retries: usize,

    /// Coefficient box for general elements over QQ.
    #[arg(long, default_value_t = 1000)]
    coeff_bound: u64,

    #[arg(long, default_value_t = 3)]
    hs_window: usize,

    #[arg(long, default_value_t = 60)]
    hs_cap: usize,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Gröbner cache directory (default `$HOME/.cache/segrelab`).
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    #[arg(long)]
    no_cache: bool,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "qq" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("gf:")
        .ok_or_else(|| format!("expected 'qq' or 'gf:<p>', got '{s}'"))?;
    let p: u64 = p.parse().map_err(|e| format!("bad prime '{p}': {e}"))?;
    segrelab::PrimeField::new(p).map_err(|e| e.to_string())?;
    Ok(FieldSpec::Prime(p))
}

fn seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SEGRELAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| format!("SEGRELAB_SEED '{v}': {e}")),
        Err(_) => Ok(rand::random()),
    }
}

fn cache_dir(args: &Args) -> Option<PathBuf> {
    if args.no_cache {
        return None;
    }
    args.cache_dir.clone().or_else(|| {
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("segrelab"))
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.session.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.session)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("segrelab: {}: {e}", args.session.display());
            return ExitCode::from(2);
        }
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("segrelab: {}: {e}", args.session.display());
            return ExitCode::from(2);
        }
    };
    let seed = match seed(args.seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("segrelab: {e}");
            return ExitCode::from(2);
        }
    };
    let store = cache_dir(&args).map(|d| Arc::new(DiskStore::new(d)));
    let cfg = RunConfig {
        field: args.field.clone(),
        invariants: InvariantConfig {
            seed,
            retries: args.retries,
            coeff_bound: args.coeff_bound,
            hs: HsConfig {
                window: args.hs_window,
                cap: args.hs_cap,
            },
        },
        store: store.clone().map(|s| s as Arc<dyn GbStore>),
    };
    let report = run(&session, &cfg);
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("segrelab: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if let Some(s) = &store {
        // kept out of the report so warm and cold runs print the same bytes
        eprintln!("cache: {} hits, {} misses", s.hits(), s.misses());
    }
    if report.failures() > 0 {
        eprintln!("segrelab: {} command(s) failed", report.failures());
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
