//! Command-line driver: argument types, the `cmd_*` entry points and exit
//! codes. The binary in `main.rs` only parses and dispatches.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use wild11::analysis::{analyze, Height};
use wild11::delsarte::verify_cover_identity;
use wild11::equivariant::{run_equivariant, WILD_PRIME};
use wild11::ffield::{is_prime, FieldSpec};
use wild11::kodaira::{
    artin_invariant, classify_fibers, trivial_lattice, wild_delta_report, KodairaFiber,
};
use wild11::surface::{make_model, surface_count, ModelKind};
use wild11::ErrorKind;

pub mod render;
pub mod report;

use report::*;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const THREADS_ENV: &str = "WILD11_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] wild11::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Usage => EXIT_USAGE,
                ErrorKind::Capability => EXIT_CAPABILITY,
                ErrorKind::Internal => EXIT_INTERNAL,
            },
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Epsilon,
    Gamma,
    Uniform,
}

impl From<KindArg> for ModelKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Epsilon => ModelKind::Epsilon,
            KindArg::Gamma => ModelKind::Gamma,
            KindArg::Uniform => ModelKind::Uniform,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wild11",
    version,
    about = "Frobenius and fibre analysis of elliptic K3 surfaces with an order-11 automorphism"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timings (makes output non-deterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial, Picard bound and height of one surface.
    Analyze {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        param: u64,
        #[arg(long = "p", default_value_t = WILD_PRIME)]
        p: u64,
    },
    /// All members of both families over F_11, grouped by square class.
    Table {
        #[arg(long = "p", default_value_t = WILD_PRIME)]
        p: u64,
    },
    /// Singular fibres of a model.
    Fibers {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        param: u64,
        #[arg(long = "p")]
        p: u64,
    },
    /// Trivial lattice and Artin invariant.
    Lattice {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        param: u64,
        #[arg(long = "p")]
        p: u64,
    },
    /// Check the Fermat cover identity.
    CoverCheck,
    /// Number of F_q-points of a surface with irreducible fibres.
    Count {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        param: u64,
        #[arg(long)]
        q: u64,
    },
}

fn timed<T>(timings: &mut BTreeMap<String, u64>, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(name.into(), start.elapsed().as_millis() as u64);
    out
}

fn height_str(h: Height) -> String {
    h.to_string()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn require_equivariant(kind: ModelKind, p: u64) -> Result<(), CliError> {
    if kind == ModelKind::Uniform {
        return Err(CliError::Usage(
            "analyze needs --kind epsilon or --kind gamma".into(),
        ));
    }
    if p != WILD_PRIME {
        return Err(wild11::Error::Unsupported(format!(
            "equivariant analysis at p = {p} (only p = 11 carries the automorphism)"
        ))
        .into());
    }
    Ok(())
}

pub fn cmd_analyze(kind: ModelKind, param: u64, p: u64, timing: bool) -> Result<Report, CliError> {
    require_equivariant(kind, p)?;
    make_model(kind, param, p)?;
    let mut t = BTreeMap::new();
    let run = timed(&mut t, "equivariant", || run_equivariant(kind, param))?;
    let an = timed(&mut t, "analysis", || analyze(&run.charpoly, kind))?;

    let mut report = Report::new(
        "analyze",
        Inputs {
            kind: kind.to_string(),
            param,
            p,
        },
    );
    report.tally = Some(PerLevel {
        q_p: run.tally_p.fix.to_vec(),
        q_p2: run.tally_p2.fix.to_vec(),
    });
    report.traces = Some(PerLevel {
        q_p: wild11::equivariant::traces_from_tally(&run.tally_p).to_vec(),
        q_p2: wild11::equivariant::traces_from_tally(&run.tally_p2).to_vec(),
    });
    let coords = |e: &wild11::cyclotomic::EigenTraces| -> Vec<Vec<String>> {
        e.iter().map(|a| strings(a.coords())).collect()
    };
    report.eigentraces = Some(PerLevel {
        q_p: coords(&run.eigen_p),
        q_p2: coords(&run.eigen_p2),
    });
    report.charpoly = Some(CharPolySection {
        mu: strings(run.charpoly.mu.coeffs()),
        mu_full: strings(run.charpoly.mu_full.coeffs()),
        mu_tilde: strings(an.mu_tilde.coeffs()),
        mu_tilde_display: an.mu_tilde.to_string(),
    });
    report.analysis = Some(AnalysisSection {
        picard_upper: an.picard_upper,
        picard_lower: an.picard_lower,
        cyclotomic_factors: an.cyclotomic_factors.clone(),
        height: height_str(an.height),
        height_consistent: an.height_consistent(),
        newton_slopes: an
            .newton
            .valuations
            .iter()
            .map(|(s, m)| (s.to_string(), *m))
            .collect(),
        checks: an
            .checks
            .entries()
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
    });
    if timing {
        report.meta.timing_ms = Some(t);
    }
    Ok(report)
}

fn is_square_mod(a: u64, p: u64) -> bool {
    (1..p).any(|s| s * s % p == a % p)
}

pub fn cmd_table(p: u64, timing: bool) -> Result<TableReport, CliError> {
    require_equivariant(ModelKind::Epsilon, p)?;
    let start = Instant::now();
    let jobs: Vec<(ModelKind, u64)> = [ModelKind::Epsilon, ModelKind::Gamma]
        .into_iter()
        .flat_map(|k| (1..p).map(move |c| (k, c)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(kind, param)| {
            let run = run_equivariant(kind, param)?;
            let an = analyze(&run.charpoly, kind)?;
            Ok((kind, param, an))
        })
        .collect::<Result<Vec<_>, wild11::Error>>()?;

    let mut rows: Vec<TableRow> = Vec::new();
    for (kind, param, an) in results {
        let class = if is_square_mod(param, p) {
            "square"
        } else {
            "non-square"
        };
        let coeffs = strings(an.mu_tilde.coeffs());
        match rows
            .iter_mut()
            .find(|r| r.family == kind.to_string() && r.square_class == class)
        {
            Some(row) => {
                if row.mu_tilde != coeffs {
                    return Err(wild11::Error::Inconsistent(format!(
                        "{kind} = {param} differs from {kind} = {} in the same square class",
                        row.members[0]
                    ))
                    .into());
                }
                row.members.push(param);
            }
            None => rows.push(TableRow {
                family: kind.to_string(),
                square_class: class.into(),
                members: vec![param],
                mu_tilde: coeffs,
                mu_tilde_display: an.mu_tilde.to_string(),
                picard_upper: an.picard_upper,
                height: height_str(an.height),
            }),
        }
    }
    let mut distinct: Vec<&Vec<String>> = rows.iter().map(|r| &r.mu_tilde).collect();
    distinct.sort();
    distinct.dedup();
    let distinct_polynomials = distinct.len();
    let mut meta = Meta::new("table");
    if timing {
        meta.timing_ms = Some(BTreeMap::from([(
            "total".into(),
            start.elapsed().as_millis() as u64,
        )]));
    }
    Ok(TableReport {
        meta,
        p,
        distinct_polynomials,
        rows,
    })
}

fn fiber_entry(f: &KodairaFiber) -> FiberEntry {
    FiberEntry {
        location: f.place.location.to_string(),
        degree: f.place.degree,
        kind: f.kind.to_string(),
        v_delta: f.place.vdelta,
        v_c4: f.place.vc4,
        components: f.components(),
    }
}

/// Fibres for `p >= 5`; for the uniform model in characteristic 2 or 3 the
/// discriminant bookkeeping instead.
pub fn cmd_fibers(kind: ModelKind, param: u64, p: u64) -> Result<Report, CliError> {
    let model = make_model(kind, param, p)?;
    let mut report = Report::new(
        "fibers",
        Inputs {
            kind: kind.to_string(),
            param: model.param(),
            p,
        },
    );
    if p < 5 && kind == ModelKind::Uniform {
        let w = wild_delta_report(&model)?;
        report.wild = Some(WildSection {
            delta: w.delta.to_string(),
            affine_degree: w.affine_degree,
            v_infinity: w.v_infinity,
            tame_at_infinity: w.tame_at_infinity,
            wild_index: w.wild_index,
        });
        return Ok(report);
    }
    let fibers = classify_fibers(&model)?;
    report.fibers = Some(fibers.iter().map(fiber_entry).collect());
    Ok(report)
}

pub fn cmd_lattice(kind: ModelKind, param: u64, p: u64) -> Result<Report, CliError> {
    let model = make_model(kind, param, p)?;
    let fibers = classify_fibers(&model)?;
    let ls = trivial_lattice(&fibers)?;
    let mut report = Report::new(
        "lattice",
        Inputs {
            kind: kind.to_string(),
            param: model.param(),
            p,
        },
    );
    report.fibers = Some(fibers.iter().map(fiber_entry).collect());
    report.lattice = Some(LatticeSection {
        rank: ls.rank,
        abs_disc: ls.abs_disc,
        components: strings(&ls.components),
        artin_invariant: artin_invariant(&ls, p),
    });
    Ok(report)
}

pub const COVER_REDUCTION_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub fn cmd_cover() -> Result<CoverReport, CliError> {
    let id = verify_cover_identity();
    Ok(CoverReport {
        meta: Meta::new("cover-check"),
        verified: id.holds,
        cofactor: id.cofactor.to_string(),
        remainder: id.remainder.to_string(),
        reductions: COVER_REDUCTION_PRIMES
            .iter()
            .map(|&p| (p.to_string(), id.holds_mod(p)))
            .collect(),
    })
}

/// `(p, r)` with `q = p^r`.
pub fn prime_power(q: u64) -> Result<(u64, usize), CliError> {
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .filter(|&d| is_prime(d));
    let p = p.ok_or_else(|| CliError::Usage(format!("q = {q} is not a prime power")))?;
    let (mut rest, mut r) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(CliError::Usage(format!("q = {q} is not a prime power")));
    }
    Ok((p, r))
}

pub fn cmd_count(kind: ModelKind, param: u64, q: u64) -> Result<CountReport, CliError> {
    let (p, r) = prime_power(q)?;
    let model = make_model(kind, param, p)?;
    let spec = FieldSpec::new(p, r)?;
    let count = surface_count(&model, &spec)?;
    Ok(CountReport {
        meta: Meta::new("count"),
        kind: kind.to_string(),
        param: model.param(),
        q,
        count,
    })
}

/// Sizes the global rayon pool from `WILD11_THREADS` when set.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a positive integer, got {v:?}"
        ))
    })?;
    // a second initialisation (e.g. in tests) keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Runs one parsed invocation and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let f = cli.format;
    match cli.command {
        Command::Analyze { kind, param, p } => {
            render::render(&cmd_analyze(kind.into(), param, p, cli.timing)?, f)
        }
        Command::Table { p } => render::render(&cmd_table(p, cli.timing)?, f),
        Command::Fibers { kind, param, p } => {
            render::render(&cmd_fibers(kind.into(), param, p)?, f)
        }
        Command::Lattice { kind, param, p } => {
            render::render(&cmd_lattice(kind.into(), param, p)?, f)
        }
        Command::CoverCheck => render::render(&cmd_cover()?, f),
        Command::Count { kind, param, q } => render::render(&cmd_count(kind.into(), param, q)?, f),
    }
}

/// Executes and writes the output; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = configure_threads(std::env::var(THREADS_ENV).ok().as_deref())
        .and_then(|_| execute(cli))
        .and_then(|out| match &cli.out {
            Some(path) => std::fs::write(path, out).map_err(CliError::from),
            None => {
                print!("{out}");
                Ok(())
            }
        });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("wild11: {e}");
            e.exit_code()
        }
    }
}
