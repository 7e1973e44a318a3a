//! `framecraft`: deterministic JSON/CSV reports for frame, induction, almost-invariance and
//! dyadic experiments.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use framecraft::dyadic::HaarNormalization;
use serde_json::json;
use sha2::{Digest, Sha256};

use commands::{Ctx, FramextArgs, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl From<framecraft::Error> for Failure {
    fn from(e: framecraft::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseRep {
    Regular,
    Trivial,
    Fourier,
}

impl BaseRep {
    pub fn name(self) -> &'static str {
        match self {
            BaseRep::Regular => "regular",
            BaseRep::Trivial => "trivial",
            BaseRep::Fourier => "fourier",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetRule {
    /// V_n = atoms n, n+1, ... (nested)
    Tail,
    /// V_n = {atom n}
    Singletons,
}

impl SetRule {
    pub fn name(self) -> &'static str {
        match self {
            SetRule::Tail => "tail",
            SetRule::Singletons => "singletons",
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "framecraft",
    version,
    about = "Frame-theoretic experiments on finite groups and dyadic wavelets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tolerance for classifications and bound comparisons.
    #[arg(long, global = true, default_value_t = framecraft::frames::DEFAULT_TOL)]
    tol: f64,

    /// Seed for every randomized check (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_seed)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; sweep commands default to csv, the rest to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Include wall-clock time in JSON reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frame bounds and classification of a vector system.
    FrameReport { system: PathBuf },
    /// The canonical Parseval frame S^{-1/2} f_k of a total system.
    Canonical { system: PathBuf },
    /// Frame bounds of a truncation family over increasing sizes.
    TruncationProfile {
        /// diag, diag:<p> (a_n = n^-p), or overlap
        #[arg(long, default_value = "diag")]
        family: String,
        #[arg(long, default_value = "2,4,8,16")]
        sizes: String,
    },
    /// Validate a group description and summarize it.
    GroupValidate { group: PathBuf },
    /// Cosets, cocycle table and cocycle-law checks for a subgroup.
    CocycleCheck {
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        /// Use this cocycle table instead of the canonical one.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Build an induced representation and report its block layout.
    Induce {
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BaseRep::Regular)]
        base: BaseRep,
    },
    /// Compare frame bounds of a subgroup orbit with those of its dilation.
    Framext {
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BaseRep::Regular)]
        base: BaseRep,
        /// Frame vector as comma-separated entries `re` or `re:im` (default: delta at the identity).
        #[arg(long)]
        w: Option<String>,
        /// Subgroup element indices (default: the whole subgroup).
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = 200)]
        probes: usize,
    },
    /// Best almost-invariant vector for a set of generators.
    Gap {
        group: PathBuf,
        #[arg(long)]
        generators: String,
        #[arg(long, value_enum, default_value_t = BaseRep::Regular)]
        rep: BaseRep,
        /// Do not skip exactly invariant vectors.
        #[arg(long)]
        include_invariants: bool,
    },
    /// Characters and Laplacian diagonal of an atomic measure on the torus.
    DualMeasure { measure: PathBuf },
    /// Defects of normalized indicator witnesses and the obstruction constant.
    Thai1 {
        measure: PathBuf,
        #[arg(long, value_enum, default_value_t = SetRule::Tail)]
        sets: SetRule,
    },
    /// Exact Haar computations: overlaps, Gram identity, conjugation and defining relation.
    HaarDemo {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        gram_range: i64,
        #[arg(long, default_value = "unit", value_parser = parse_normalization)]
        normalization: HaarNormalization,
    },
    /// Exact partial sums of squared overlaps of the translated Haar wavelet.
    BesselDivergence {
        #[arg(long, default_value_t = 100)]
        n_max: u32,
        #[arg(long, default_value = "unit", value_parser = parse_normalization)]
        normalization: HaarNormalization,
    },
}

fn parse_normalization(s: &str) -> Result<HaarNormalization, String> {
    s.parse().map_err(|e: framecraft::Error| e.to_string())
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FrameReport { .. } => "frame-report",
            Command::Canonical { .. } => "canonical",
            Command::TruncationProfile { .. } => "truncation-profile",
            Command::GroupValidate { .. } => "group-validate",
            Command::CocycleCheck { .. } => "cocycle-check",
            Command::Induce { .. } => "induce",
            Command::Framext { .. } => "framext",
            Command::Gap { .. } => "gap",
            Command::DualMeasure { .. } => "dual-measure",
            Command::Thai1 { .. } => "thai1",
            Command::HaarDemo { .. } => "haar-demo",
            Command::BesselDivergence { .. } => "bessel-divergence",
        }
    }
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::FrameReport { system } => commands::frame_report_cmd(ctx, system),
        Command::Canonical { system } => commands::canonical_cmd(ctx, system),
        Command::TruncationProfile { family, sizes } => commands::truncation_profile_cmd(family, sizes),
        Command::GroupValidate { group } => commands::group_validate_cmd(ctx, group),
        Command::CocycleCheck {
            group,
            subgroup,
            cocycle,
        } => commands::cocycle_check_cmd(ctx, group, subgroup, cocycle.as_deref()),
        Command::Induce {
            group,
            subgroup,
            cocycle,
            base,
        } => commands::induce_cmd(ctx, group, subgroup, cocycle.as_deref(), *base),
        Command::Framext {
            group,
            subgroup,
            cocycle,
            base,
            w,
            subset,
            probes,
        } => commands::framext_cmd(
            ctx,
            FramextArgs {
                group,
                subgroup,
                cocycle: cocycle.as_deref(),
                base: *base,
                w: w.as_deref(),
                subset: subset.as_deref(),
                probes: *probes,
            },
        ),
        Command::Gap {
            group,
            generators,
            rep,
            include_invariants,
        } => commands::gap_cmd(ctx, group, generators, *rep, *include_invariants),
        Command::DualMeasure { measure } => commands::dual_measure_cmd(measure),
        Command::Thai1 { measure, sets } => commands::thai1_cmd(measure, *sets),
        Command::HaarDemo {
            n_max,
            gram_range,
            normalization,
        } => commands::haar_demo_cmd(ctx, *n_max, *gram_range, *normalization),
        Command::BesselDivergence { n_max, normalization } => commands::bessel_cmd(*n_max, *normalization),
    }
}

fn digest(command: &str, outcome: &Outcome) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for inp in &outcome.inputs {
        h.update(b"\0input\0");
        h.update(&inp.bytes);
    }
    for p in &outcome.params {
        h.update(b"\0param\0");
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(value) = std::env::var("FRAMECRAFT_THREADS") {
        let n: usize = value.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::Validation(format!("FRAMECRAFT_THREADS must be a positive integer, got {value:?}"))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Validation(format!("cannot configure thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Validation(format!("--tol must be positive, got {}", cli.tol)));
    }
    configure_threads()?;
    let start = Instant::now();
    let ctx = Ctx {
        tol: cli.tol,
        seed: cli.seed,
    };
    let outcome = dispatch(&ctx, &cli.command)?;
    let format = cli.format.unwrap_or(if outcome.table.is_some() {
        Format::Csv
    } else {
        Format::Json
    });
    match format {
        Format::Csv => outcome
            .table
            .as_ref()
            .map(|t| t.to_csv())
            .ok_or_else(|| Failure::Validation(format!("{} has no csv output", cli.command.name()))),
        Format::Json => {
            let mut report = json!({
                "command": cli.command.name(),
                "inputs_digest": digest(cli.command.name(), &outcome),
                "results": outcome.results,
                "seed": cli.seed,
                "tol": cli.tol,
                "tool_version": env!("CARGO_PKG_VERSION"),
            });
            if cli.timing {
                report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            Ok(output::to_json_string(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Validation(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Validation(format!("cannot write output: {e}"))),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = match e {
                Failure::Validation(_) => "validation error",
                Failure::Numerical(_) => "numerical failure",
            };
            eprintln!("framecraft: {kind}: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
