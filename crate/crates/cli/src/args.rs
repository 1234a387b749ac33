use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::CliError;

/// Environment variable holding the default precision in decimal digits.
pub const PRECISION_ENV: &str = "FOLIATION_PRECISION";

/// Values of `n` a sweep visits above which a warning is printed.
pub const LARGE_N: u64 = 2000;

#[derive(Parser, Debug)]
#[command(
    name = "forests",
    version,
    about = "Rooted spanning forests of circulant foliations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Print Q(w), F(z), eta, s, Q(1) and Q(-1).
    Poly(CommonArgs),
    /// Count forests through the resultant formula.
    Count(CommonArgs),
    /// Count forests as det(I + L) of the expanded graph.
    Oracle(CommonArgs),
    /// Check f(n) = p f(H) a(n)^2 with the square root extracted exactly.
    Verify(CommonArgs),
    /// Growth constant A by root finding and by quadrature.
    Mahler(CommonArgs),
    /// f(n)^(1/n) / A for n up to the given bound.
    Converge(CommonArgs),
    /// Write out the expanded graph H_n.
    Expand(CommonArgs),
}

impl CommandArgs {
    pub fn split(self) -> (Command, CommonArgs) {
        match self {
            CommandArgs::Poly(a) => (Command::Poly, a),
            CommandArgs::Count(a) => (Command::Count, a),
            CommandArgs::Oracle(a) => (Command::Oracle, a),
            CommandArgs::Verify(a) => (Command::Verify, a),
            CommandArgs::Mahler(a) => (Command::Mahler, a),
            CommandArgs::Converge(a) => (Command::Converge, a),
            CommandArgs::Expand(a) => (Command::Expand, a),
        }
    }
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// Family descriptor, e.g. "GP(n,2)" or "Y(n;1,1,1)".
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, conflicts_with = "range")]
    pub n: Option<u64>,
    /// Inclusive range `a..b`.
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Decimal digits for floating results (1 to 15).
    #[arg(long)]
    pub precision: Option<u32>,
    /// TOML file with the same keys as the flags; flags take priority.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Accept a disconnected base graph for `oracle` and `expand`.
    #[arg(long)]
    pub allow_disconnected: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Poly,
    Count,
    Oracle,
    Verify,
    Mahler,
    Converge,
    Expand,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Poly => "poly",
            Command::Count => "count",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
            Command::Mahler => "mahler",
            Command::Converge => "converge",
            Command::Expand => "expand",
        }
    }

    /// Commands whose output does not depend on `n`.
    pub fn ignores_n(self) -> bool {
        matches!(self, Command::Poly | Command::Mahler)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Plain,
    EdgeList,
    GraphText,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    pub family: Option<String>,
    pub n: Option<u64>,
    pub range: Option<String>,
    pub format: Option<Format>,
    pub precision: Option<u32>,
    #[serde(alias = "allow_disconnected")]
    pub allow_disconnected: Option<bool>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Which values of `n` a command runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NSelection {
    None,
    Single(u64),
    /// Inclusive.
    Range(u64, u64),
}

impl NSelection {
    pub fn values(self) -> Vec<u64> {
        match self {
            NSelection::None => Vec::new(),
            NSelection::Single(n) => vec![n],
            NSelection::Range(a, b) => (a..=b).collect(),
        }
    }

    pub fn max(self) -> Option<u64> {
        match self {
            NSelection::None => None,
            NSelection::Single(n) | NSelection::Range(_, n) => Some(n),
        }
    }
}

/// A fully resolved invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Request {
    pub command: Command,
    pub family: String,
    pub n: NSelection,
    pub format: Format,
    pub precision: u32,
    pub allow_disconnected: bool,
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_range(text: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::usage(format!("range `{text}` is not of the form a..b"));
    let (a, b) = text.trim().split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::usage(format!("range `{text}` is empty")));
    }
    Ok((a, b))
}

impl Request {
    /// Merges flags, the optional config file and the precision environment
    /// value, in that order of priority.
    pub fn resolve(
        command: Command,
        args: CommonArgs,
        env_precision: Option<String>,
    ) -> Result<Self, CliError> {
        let config = match &args.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        let family = args
            .family
            .or(config.family)
            .ok_or_else(|| CliError::usage("missing --family".into()))?;
        // A flag for either of n or range overrides both config keys.
        let (n, range) = if args.n.is_some() || args.range.is_some() {
            (args.n, args.range)
        } else {
            (config.n, config.range)
        };
        let n = match (n, range) {
            (Some(_), Some(_)) => {
                return Err(CliError::usage("give either n or range, not both".into()))
            }
            (Some(n), None) => NSelection::Single(n),
            (None, Some(r)) => {
                let (a, b) = parse_range(&r)?;
                NSelection::Range(a, b)
            }
            (None, None) => NSelection::None,
        };
        let default_format = if command == Command::Expand {
            Format::EdgeList
        } else {
            Format::Json
        };
        let format = args.format.or(config.format).unwrap_or(default_format);
        if matches!(format, Format::EdgeList | Format::GraphText) && command != Command::Expand {
            return Err(CliError::usage(format!(
                "format {format:?} is only available for expand"
            )));
        }
        let precision = match args.precision.or(config.precision) {
            Some(p) => p,
            None => match env_precision {
                Some(v) => v.trim().parse().map_err(|_| {
                    CliError::usage(format!("{PRECISION_ENV}={v} is not a digit count"))
                })?,
                None => forests_core::asymptotics::Precision::DEFAULT_DIGITS,
            },
        };
        Ok(Request {
            command,
            family,
            n,
            format,
            precision,
            allow_disconnected: args.allow_disconnected
                || config.allow_disconnected.unwrap_or(false),
        })
    }
}
