//! Flag definitions and the parsers for their list syntaxes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqcount::{FieldElement, FieldSpec, Limits};
use std::ops::RangeInclusive;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "fqcount", version, about = "Exact counts over finite fields, identity suites and bound reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count solutions of a weighted diagonal system.
    Count(CountArgs),
    /// Count k-subsets with prescribed moments.
    Ssp(SspArgs),
    /// Run the combinatorial identity suites.
    Identities(IdentitiesArgs),
    /// Sweep a grid of instances against their main terms and error bounds.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dp,
    Brute,
    Ie,
    Dist,
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dp => "dp",
            Method::Brute => "brute",
            Method::Ie => "ie",
            Method::Dist => "dist",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Diagonal,
    Subset,
    All,
}

/// Output and resource flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest dense DP state space.
    #[arg(long)]
    pub limit_dp: Option<u64>,
    /// Largest number of tuples or subsets an enumeration may visit.
    #[arg(long)]
    pub limit_enum: Option<u64>,
}

impl Common {
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(n) = self.limit_dp {
            limits.dp_states = n;
        }
        if let Some(n) = self.limit_enum {
            limits.enumeration = n;
        }
        limits
    }
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub s: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Exponents d_1 < ... < d_m, comma separated.
    #[arg(long)]
    pub exps: String,
    /// Weights a_1..a_l, comma separated; defaults to `--k` ones.
    #[arg(long)]
    pub weights: Option<String>,
    /// Number of unknowns when no weights are given.
    #[arg(long)]
    pub k: Option<usize>,
    /// Targets b_1..b_m, comma separated; each an integer below q or coefficients `c0:c1:...`.
    #[arg(long)]
    pub b: String,
    /// `full`, `image:c0,c1,...` or `list:x1,x2,...`.
    #[arg(long, default_value = "full")]
    pub domain: String,
    #[arg(long, value_enum, default_value = "dp")]
    pub method: Method,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SspArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Subset size.
    #[arg(long)]
    pub k: usize,
    /// Exponents d_1 < ... < d_m, comma separated.
    #[arg(long, default_value = "1")]
    pub exps: String,
    /// Targets b_1..b_m, comma separated; each an integer below q or coefficients `c0:c1:...`.
    #[arg(long)]
    pub b: String,
    /// `full`, `image:c0,c1,...` or `list:x1,x2,...`.
    #[arg(long, default_value = "full")]
    pub domain: String,
    #[arg(long, value_enum, default_value = "all")]
    pub method: Method,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    /// `A..B` (inclusive) or `N` for `1..N`.
    #[arg(long, default_value = "1..8")]
    pub k_range: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub kind: Kind,
    /// Largest field order in the grid.
    #[arg(long, default_value_t = 13)]
    pub q_max: u64,
    /// Largest k (unknowns or subset size).
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    /// Largest number of equations.
    #[arg(long, default_value_t = 2)]
    pub m_max: usize,
    /// Random nonzero targets drawn per instance, besides b = 0.
    #[arg(long, default_value_t = 2)]
    pub targets: usize,
    #[command(flatten)]
    pub common: Common,
}

/// A usage error in a flag value.
#[derive(Debug)]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

pub fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, UsageError> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| UsageError(format!("--{flag}: cannot parse {t:?}"))))
        .collect()
}

/// A field element: either its canonical index, or its coefficient vector in
/// the power basis written `c0:c1:...`.
pub fn parse_element(field: &FieldSpec, text: &str) -> Result<FieldElement, UsageError> {
    let text = text.trim();
    let result = if text.contains(':') {
        let coeffs: Vec<u32> = text
            .split(':')
            .map(|c| c.parse().map_err(|_| UsageError(format!("bad coefficient in {text:?}"))))
            .collect::<Result<_, _>>()?;
        field.from_coeffs(&coeffs)
    } else {
        let index: u32 = text.parse().map_err(|_| UsageError(format!("bad field element {text:?}")))?;
        field.element(index)
    };
    result.map_err(|e| UsageError(e.to_string()))
}

pub fn parse_elements(field: &FieldSpec, flag: &str, text: &str) -> Result<Vec<FieldElement>, UsageError> {
    if text.trim().is_empty() {
        return usage(format!("--{flag} is empty"));
    }
    text.split(',').map(|t| parse_element(field, t)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainSpec {
    Full,
    /// Polynomial coefficients, lowest degree first.
    Image(Vec<FieldElement>),
    List(Vec<FieldElement>),
}

pub fn parse_domain(field: &FieldSpec, text: &str) -> Result<DomainSpec, UsageError> {
    match text.split_once(':') {
        None if text == "full" => Ok(DomainSpec::Full),
        Some(("image", rest)) => Ok(DomainSpec::Image(parse_elements(field, "domain", rest)?)),
        Some(("list", rest)) => Ok(DomainSpec::List(parse_elements(field, "domain", rest)?)),
        _ => usage(format!("--domain must be full, image:<coefficients> or list:<elements>, got {text:?}")),
    }
}

pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, UsageError> {
    let bad = || UsageError(format!("--k-range must look like A..B or N, got {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)
        }
        None => (1, text.trim().parse().map_err(|_| bad())?),
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}
