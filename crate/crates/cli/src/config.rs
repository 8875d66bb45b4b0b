//! Validated run configuration.
//!
//! Every invocation resolves to a [`RunConfig`] before any computation
//! starts, and the resolved configuration is recorded verbatim in the
//! header of every output, so a result can always be reproduced from its
//! own artifact.

use crate::Failure;
use serde_json::{json, Value};
use spindex_core::dirac::CasimirConvention;
use spindex_core::exactnum::Rat;
use spindex_core::rootsys::{supported_systems, CartanType, Params};
use std::fmt;

/// Environment variable that overrides the `--threads` flag.
pub const THREADS_ENV: &str = "SPINDEX_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Pretty => "pretty",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConventionArg {
    /// Casimir cross terms over pairs sent to negative roots.
    Negative,
    /// Casimir cross terms over pairs sent to positive roots.
    Positive,
}

impl From<ConventionArg> for CasimirConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Negative => CasimirConvention::NegativeImage,
            ConventionArg::Positive => CasimirConvention::PositiveImage,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GroupChoice {
    /// The Weyl group itself.
    Weyl,
    /// The full double cover.
    Cover,
    /// The carrier of the spin modules (even part of the cover when the
    /// rank is even, the full cover otherwise).
    Carrier,
}

impl GroupChoice {
    pub fn label(self) -> &'static str {
        match self {
            GroupChoice::Weyl => "weyl",
            GroupChoice::Cover => "cover",
            GroupChoice::Carrier => "carrier",
        }
    }
}

/// A fully validated invocation: everything a run depends on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub cartan_type: CartanType,
    pub rank: usize,
    pub params: Params,
    pub convention: CasimirConvention,
    pub format: OutputFormat,
    pub seed: u64,
    pub threads: usize,
    /// `classes --elliptic` filter.
    pub elliptic_only: Option<bool>,
    /// `chartable --group` choice.
    pub group: Option<GroupChoice>,
    /// `springer-eval --data` path, as given.
    pub data: Option<String>,
}

impl RunConfig {
    /// The header object recorded in every output.
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "command": self.command,
            "type": self.cartan_type.to_string(),
            "rank": self.rank,
            "params": self.params,
            "convention": self.convention.label(),
            "format": self.format.to_string(),
            "seed": self.seed,
            "threads": self.threads,
        });
        let map = obj.as_object_mut().expect("config is an object");
        if let Some(e) = self.elliptic_only {
            map.insert("elliptic".into(), json!(e));
        }
        if let Some(g) = self.group {
            map.insert("group".into(), json!(g.label()));
        }
        if let Some(d) = &self.data {
            map.insert("data".into(), json!(d));
        }
        obj
    }
}

/// Parse `--type`: a single Cartan letter.
pub fn parse_type(s: &str) -> Result<CartanType, Failure> {
    s.parse::<CartanType>()
        .map_err(|_| usage(format!("unknown Cartan type {:?}; expected one of A, B, C, D, G, F", s)))
}

/// Check that (type, rank) is one of the supported systems.
pub fn check_supported(ct: CartanType, rank: usize) -> Result<(), Failure> {
    let systems = supported_systems();
    if systems.contains(&(ct, rank)) {
        return Ok(());
    }
    let list = systems
        .iter()
        .map(|(t, n)| format!("{}{}", t, n))
        .collect::<Vec<_>>()
        .join(", ");
    Err(usage(format!(
        "{}{} is not a supported system; available: {}",
        ct, rank, list
    )))
}

/// Parse `--params`: `equal` or `LONG,SHORT` with positive rational values.
pub fn parse_params(s: &str, ct: CartanType) -> Result<Params, Failure> {
    if s == "equal" {
        return Ok(Params::equal());
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!(
            "bad --params {:?}; expected \"equal\" or \"LONG,SHORT\" (two rationals)",
            s
        )));
    }
    let mut vals = Vec::with_capacity(2);
    for p in &parts {
        let r: Rat = p
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad parameter value {:?}; expected a rational like 3/2", p)))?;
        if r <= Rat::from_integer(0.into()) {
            return Err(usage(format!("parameter value {} must be positive", p.trim())));
        }
        vals.push(r);
    }
    let (long, short) = (vals.remove(0), vals.remove(0));
    let simply_laced = matches!(ct, CartanType::A | CartanType::D);
    if simply_laced && long != short {
        return Err(usage(format!(
            "type {} has a single root length; the two parameter values must agree",
            ct
        )));
    }
    Ok(Params::two(long, short))
}

/// Resolve the worker-thread count: the environment variable wins over the
/// flag; the result must be at least 1.
pub fn resolve_threads(flag: usize) -> Result<usize, Failure> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| usage(format!("bad {}={:?}; expected a positive integer", THREADS_ENV, v)))?,
        Err(_) => flag,
    };
    if n == 0 {
        return Err(usage("thread count must be at least 1".into()));
    }
    Ok(n)
}

pub fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}
