//! Command-line flags, the optional JSON config file, and their merge into a [`RunConfig`].

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bilap_core::{BcKind, DomainSpec, Pair};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::parse::{parse_domain, parse_grids, parse_index_range, parse_pair, parse_real_grid, validate_grids};
use crate::report::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Roots of cos γ cosh γ = 1 and the defect brackets.
    Roots,
    /// Exact 1D spectra of the six boundary pairs.
    Spectrum1d,
    /// Riesz means R₁(z) against the two-sided bounds.
    Riesz1d,
    /// Lattice envelopes for Σ(R⁴ − n⁴)₊.
    LemmaOnedim,
    /// Dimensional constants and boundary coefficients.
    Constants,
    /// Two-term eigenvalue predictions.
    Predict,
    /// Averaged-variational upper bounds and their consequences.
    Avp,
    /// Refined Kröger–Laptev interval and sharpened Young inequality.
    KroegerLaptev,
    /// Finite-difference clamped-plate spectra on rectangles.
    Eig2d,
    /// Plate versus squared-Laplacian eigenvalue comparison.
    Compare,
    /// The full acceptance suite.
    All,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Roots => "roots",
            Self::Spectrum1d => "spectrum1d",
            Self::Riesz1d => "riesz1d",
            Self::LemmaOnedim => "lemma-onedim",
            Self::Constants => "constants",
            Self::Predict => "predict",
            Self::Avp => "avp",
            Self::KroegerLaptev => "kroeger-laptev",
            Self::Eig2d => "eig2d",
            Self::Compare => "compare",
            Self::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BcArg {
    Dirichlet,
    Navier,
    Ks,
    Neumann,
}

impl BcArg {
    pub fn kind(self) -> BcKind {
        match self {
            Self::Dirichlet => BcKind::Dirichlet,
            Self::Navier => BcKind::Navier,
            Self::Ks => BcKind::KuttlerSigillito,
            Self::Neumann => BcKind::Neumann,
        }
    }
}

/// Flags shared by every subcommand; the same names (kebab-case) are accepted in the config file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    /// JSON file with any of these options (and optionally "command"); flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output file; sections and tables go to <stem>.<name>.<ext> beside it. Default: stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// interval:L | square:L | rect:LxW
    #[arg(long, global = true)]
    pub domain: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub bc: Option<BcArg>,
    /// Poisson ratio.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// 1D boundary pair i,j.
    #[arg(long, global = true)]
    pub pair: Option<String>,
    /// Index range: N, a:b or a list.
    #[arg(long, global = true)]
    pub k: Option<String>,
    /// Spectral grid: a:b:Nlog, a:b:Nlin or a list.
    #[arg(long, global = true)]
    pub z: Option<String>,
    /// Heat-trace times (grid syntax).
    #[arg(long, global = true)]
    pub t: Option<String>,
    /// Mollifier widths (grid syntax).
    #[arg(long, global = true)]
    pub h: Option<String>,
    /// Lattice radii (grid syntax).
    #[arg(long, global = true)]
    pub r: Option<String>,
    /// Dimensions (index-range syntax).
    #[arg(long, global = true)]
    pub dims: Option<String>,
    /// Number of roots.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Cells per side, comma separated, increasing.
    #[arg(long, global = true)]
    pub grids: Option<String>,
    /// Spectrum cache directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Deterministic run; accepted for compatibility (nothing in this tool is random).
    #[arg(long, global = true)]
    pub seedless: bool,
}

#[derive(Debug, Parser)]
#[command(name = "bilap", version, about = "Biharmonic eigenvalue bounds: exact 1D spectra, FD plate spectra and checked inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub opts: Options,
}

/// Config file contents: an optional "command" plus any [`Options`].
///
/// Split by hand because serde ignores `deny_unknown_fields` through `flatten`.
#[derive(Debug, Default)]
struct ConfigFile {
    command: Option<Command>,
    opts: Options,
}

impl ConfigFile {
    fn parse(text: &str) -> Result<Self> {
        let mut map: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text)?;
        let command = map.remove("command").map(serde_json::from_value).transpose()?;
        let opts = serde_json::from_value(serde_json::Value::Object(map))?;
        Ok(Self { command, opts })
    }
}

/// Fully parsed configuration; `None` means the subcommand default applies.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub domain: Option<DomainSpec>,
    pub bc: Option<BcKind>,
    pub a: Option<f64>,
    pub pair: Option<Pair>,
    pub k: Option<Vec<usize>>,
    pub z: Option<Vec<f64>>,
    pub t: Option<Vec<f64>>,
    pub h: Option<Vec<f64>>,
    pub r: Option<Vec<f64>>,
    pub dims: Option<Vec<usize>>,
    pub n: Option<usize>,
    pub grids: Option<Vec<usize>>,
    pub cache_dir: Option<PathBuf>,
}

macro_rules! merge {
    ($cli:expr, $file:expr, $($f:ident),*) => {
        $( if $cli.$f.is_none() { $cli.$f = $file.$f.take(); } )*
    };
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let Cli { command, mut opts } = cli;
        let mut command = command;
        if let Some(path) = opts.config.clone() {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
            let mut file =
                ConfigFile::parse(&text).with_context(|| format!("parsing config {}", path.display()))?;
            if command.is_none() {
                command = file.command;
            }
            let f = &mut file.opts;
            merge!(opts, f, out, format, domain, bc, a, pair, k, z, t, h, r, dims, n, grids, cache);
            opts.seedless |= f.seedless;
        }
        let Some(command) = command else {
            bail!("no subcommand given (on the command line or as \"command\" in the config file)");
        };
        Self::from_options(command, opts)
    }

    pub fn from_options(command: Command, o: Options) -> Result<Self> {
        let grids = o.grids.as_deref().map(parse_grids).transpose()?;
        if let Some(g) = &grids {
            validate_grids(g)?;
        }
        if let Some(n) = o.n {
            if n == 0 {
                bail!("--n must be at least 1");
            }
        }
        let dims = o.dims.as_deref().map(parse_index_range).transpose()?;
        Ok(Self {
            command,
            out: o.out,
            format: o.format.unwrap_or_default(),
            domain: o.domain.as_deref().map(parse_domain).transpose()?,
            bc: o.bc.map(BcArg::kind),
            a: o.a,
            pair: o.pair.as_deref().map(parse_pair).transpose()?,
            k: o.k.as_deref().map(parse_index_range).transpose()?,
            z: o.z.as_deref().map(parse_real_grid).transpose()?,
            t: o.t.as_deref().map(parse_real_grid).transpose()?,
            h: o.h.as_deref().map(parse_real_grid).transpose()?,
            r: o.r.as_deref().map(parse_real_grid).transpose()?,
            dims,
            n: o.n,
            grids,
            cache_dir: o.cache,
        })
    }
}
