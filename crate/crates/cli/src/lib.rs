//! Command-line front end for the exact Weyl-group spin-character toolkit.
//!
//! [`run`] parses an argument vector, validates it into a
//! [`config::RunConfig`] before any computation starts, and returns the
//! process exit code: 0 on success, 1 when a computation or verification
//! check fails, 2 on usage errors.  Output is deterministic byte for byte
//! for a fixed configuration (including the seed).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;

pub mod commands;
pub mod config;
pub mod output;
pub mod suite;

use config::{ConventionArg, GroupChoice, OutputFormat, RunConfig};

/// A failed invocation: usage errors exit 2, run failures exit 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Run(String),
}

impl From<spindex_core::CoreError> for Failure {
    fn from(e: spindex_core::CoreError) -> Self {
        match e {
            spindex_core::CoreError::Invalid(_) => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "spindex",
    version,
    about = "Exact spin characters, Casimir spectra and elliptic pairings for Weyl groups",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Cartan type letter (A, B, C, D, G or F).
    #[arg(long = "type", value_name = "LETTER")]
    cartan_type: String,
    /// Rank of the root system.
    #[arg(long, value_name = "N")]
    rank: usize,
    /// Root parameters: "equal" or "LONG,SHORT" as positive rationals.
    #[arg(long, default_value = "equal", value_name = "VALUES")]
    params: String,
    /// Casimir sign convention.
    #[arg(long, value_enum, default_value = "negative")]
    convention: ConventionArg,
    /// Output format; CSV is available for character grids only.
    #[arg(long, value_enum, default_value = "pretty")]
    format: OutputFormat,
    /// Seed for the randomized property checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the exact-arithmetic kernels; the environment
    /// variable SPINDEX_THREADS overrides this flag.
    #[arg(long, default_value_t = 1, value_name = "N")]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Group and root-system summary.
    Info(Common),
    /// Conjugacy classes with det(1−w) and ellipticity.
    Classes {
        #[command(flatten)]
        common: Common,
        /// Keep only the elliptic classes.
        #[arg(long)]
        elliptic: bool,
    },
    /// Exact irreducible character table of W, its double cover, or the
    /// spin carrier.
    Chartable {
        #[command(flatten)]
        common: Common,
        /// Which group to tabulate.
        #[arg(long, value_enum, default_value = "weyl")]
        group: GroupChoice,
    },
    /// Spin characters of the double cover and the squared-difference law.
    Spin(Common),
    /// Gram matrix and rank of the elliptic pairing.
    EllipticPairing(Common),
    /// Casimir scalars on the genuine rows under both sign conventions.
    Casimir(Common),
    /// Hyperoctahedral family versus the symmetric-group oracle.
    BnExample(Common),
    /// Evaluate a nilpotent-orbit data file through the character formula.
    SpringerEval {
        #[command(flatten)]
        common: Common,
        /// Path to the data file.
        #[arg(long, value_name = "PATH")]
        data: String,
    },
    /// Run the verification suite for one configuration.
    Verify(Common),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info(_) => "info",
            Command::Classes { .. } => "classes",
            Command::Chartable { .. } => "chartable",
            Command::Spin(_) => "spin",
            Command::EllipticPairing(_) => "elliptic-pairing",
            Command::Casimir(_) => "casimir",
            Command::BnExample(_) => "bn-example",
            Command::SpringerEval { .. } => "springer-eval",
            Command::Verify(_) => "verify",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Info(c)
            | Command::Spin(c)
            | Command::EllipticPairing(c)
            | Command::Casimir(c)
            | Command::BnExample(c)
            | Command::Verify(c) => c,
            Command::Classes { common, .. }
            | Command::Chartable { common, .. }
            | Command::SpringerEval { common, .. } => common,
        }
    }
}

/// Validate the parsed arguments into a run configuration.
fn resolve(cmd: &Command) -> Result<RunConfig, Failure> {
    let common = cmd.common();
    let cartan_type = config::parse_type(&common.cartan_type)?;
    config::check_supported(cartan_type, common.rank)?;
    let params = config::parse_params(&common.params, cartan_type)?;
    let threads = config::resolve_threads(common.threads)?;
    let mut cfg = RunConfig {
        command: cmd.name(),
        cartan_type,
        rank: common.rank,
        params,
        convention: common.convention.into(),
        format: common.format,
        seed: common.seed,
        threads,
        elliptic_only: None,
        group: None,
        data: None,
    };
    match cmd {
        Command::Classes { elliptic, .. } => cfg.elliptic_only = Some(*elliptic),
        Command::Chartable { group, .. } => cfg.group = Some(*group),
        Command::SpringerEval { data, .. } => cfg.data = Some(data.clone()),
        Command::BnExample(_) => {
            if cfg.cartan_type != spindex_core::rootsys::CartanType::B {
                return Err(Failure::Usage(
                    "the discrete-series family example is hyperoctahedral; use --type B".into(),
                ));
            }
        }
        _ => {}
    }
    Ok(cfg)
}

/// Resolve the parameter function for `springer-eval`: a file that records
/// parameters wins over the default flag value; an explicit conflicting
/// flag is a usage error.
fn resolve_file_params(cfg: &mut RunConfig, raw_flag: &str) -> Result<(), Failure> {
    let path = cfg.data.as_deref().expect("springer-eval has a path");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read data file {}: {}", path, e)))?;
    let file = spindex_core::springerdb::parse(&text)?;
    if let Some(fp) = file.params {
        if raw_flag != "equal" && (cfg.params.long != fp.long || cfg.params.short != fp.short) {
            return Err(Failure::Usage(format!(
                "data file {} fixes the parameters to {},{}; drop --params or match it",
                path,
                fp.long,
                fp.short
            )));
        }
        cfg.params = fp;
    }
    Ok(())
}

fn dispatch(cfg: &RunConfig) -> Result<(String, bool), Failure> {
    let text = match cfg.command {
        "info" => commands::info(cfg)?,
        "classes" => commands::classes(cfg)?,
        "chartable" => commands::chartable(cfg)?,
        "spin" => commands::spin(cfg)?,
        "elliptic-pairing" => commands::elliptic_pairing(cfg)?,
        "casimir" => commands::casimir(cfg)?,
        "bn-example" => commands::bn_example(cfg)?,
        "springer-eval" => commands::springer_eval(cfg)?,
        "verify" => return verify(cfg),
        other => unreachable!("unhandled command {other}"),
    };
    Ok((text, false))
}

/// Render the verification suite; the bool reports whether any check
/// failed.
fn verify(cfg: &RunConfig) -> Result<(String, bool), Failure> {
    if cfg.format == OutputFormat::Csv {
        return Err(Failure::Usage(
            "CSV output is provided for character grids only; `verify` supports json or pretty"
                .into(),
        ));
    }
    let outcomes = suite::run_suite(
        cfg.cartan_type,
        cfg.rank,
        &cfg.params,
        cfg.convention,
        cfg.seed,
    )
    .map_err(Failure::from)?;
    let failed = outcomes.iter().filter(|o| o.result.is_err()).count();
    if cfg.format == OutputFormat::Json {
        let checks: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| match &o.result {
                Ok(detail) => serde_json::json!({
                    "name": o.name, "status": "pass", "detail": detail,
                }),
                Err(e) => serde_json::json!({
                    "name": o.name, "status": "fail", "detail": e.to_string(),
                }),
            })
            .collect();
        let result = serde_json::json!({
            "checks": checks,
            "passed": outcomes.len() - failed,
            "failed": failed,
        });
        return Ok((output::json_envelope(cfg, result), failed > 0));
    }
    let mut out = output::text_header(cfg);
    for o in &outcomes {
        match &o.result {
            Ok(detail) => out.push_str(&format!("PASS {} ({})\n", o.name, detail)),
            Err(e) => out.push_str(&format!("FAIL {} ({})\n", o.name, e)),
        }
    }
    if failed == 0 {
        out.push_str(&format!("all {} checks passed\n", outcomes.len()));
    } else {
        out.push_str(&format!("{} of {} checks failed\n", failed, outcomes.len()));
    }
    Ok((out, failed > 0))
}

/// Parse, validate, execute; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::try_init();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let mut cfg = match resolve(&cli.command) {
        Ok(cfg) => cfg,
        Err(f) => return report(f),
    };
    if let Command::SpringerEval { common, .. } = &cli.command {
        if let Err(f) = resolve_file_params(&mut cfg, &common.params) {
            return report(f);
        }
    }
    // The thread pool is process-global; later calls with the same or a
    // different width are ignored, which only matters for in-process reuse
    // in tests.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global();
    log::info!(
        "run {} on {}{} with {} threads",
        cfg.command,
        cfg.cartan_type,
        cfg.rank,
        cfg.threads
    );
    match dispatch(&cfg) {
        Ok((text, check_failed)) => {
            print!("{}", text);
            if check_failed {
                1
            } else {
                0
            }
        }
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> i32 {
    match f {
        Failure::Usage(m) => {
            eprintln!("error: {}", m);
            2
        }
        Failure::Run(m) => {
            eprintln!("error: {}", m);
            1
        }
    }
}
