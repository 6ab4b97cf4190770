//! Command-line flags, the optional TOML config file, and their merge.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use semitoric_core::{Couplings, SWeights, SystemParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "semitoric",
    version,
    about = "Fixed points, rank-1 points and parameter atlases for a two-spin integrable family"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the four fixed points.
    Classify(CommonArgs),
    /// Focus-focus count over the (s1, s2) square.
    Sweep(CommonArgs),
    /// Trace the curves where (N,S) or (S,N) degenerates.
    Gamma(CommonArgs),
    /// Momentum image: envelope, fixed-point markers and rank-1 values.
    Image(CommonArgs),
    /// Vertices of the four representative semitoric polygons.
    Polygon(CommonArgs),
    /// Run the built-in numerical checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct CommonArgs {
    /// Radii, 0 < R1 < R2.
    #[arg(long = "R", num_args = 2, value_names = ["R1", "R2"])]
    pub radii: Option<Vec<f64>>,
    /// Couplings of H.
    #[arg(long = "t", num_args = 4, value_names = ["T1", "T2", "T3", "T4"], conflicts_with = "s")]
    pub t: Option<Vec<f64>>,
    /// Interpolation weights in [0,1].
    #[arg(long = "s", num_args = 2, value_names = ["S1", "S2"])]
    pub s: Option<Vec<f64>>,
    /// Grid size: nodes per side (sweep, gamma) or number of J-values (image).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Number of zeta samples per J-value (image).
    #[arg(long)]
    pub zeta_grid: Option<usize>,
    /// Bisection tolerance for curve points (gamma).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML file with any of the keys R, t, s, grid, zeta_grid, tol, out, format.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Smaller sample sizes; finishes in a few seconds.
    #[arg(long)]
    pub quick: bool,
    /// Deliberately corrupt one computation to exercise the failure path.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Flip the sign of every discriminant.
    DeltaSign,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Classify,
    Sweep,
    Gamma,
    Image,
    Polygon,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Classify => "classify",
            CommandKind::Sweep => "sweep",
            CommandKind::Gamma => "gamma",
            CommandKind::Image => "image",
            CommandKind::Polygon => "polygon",
        }
    }

    // (default, minimum) for --grid
    fn grid_rule(self) -> Option<(usize, usize)> {
        use semitoric_core::atlas::*;
        match self {
            CommandKind::Sweep => Some((DEFAULT_FF_GRID, MIN_FF_GRID)),
            CommandKind::Gamma => Some((DEFAULT_GAMMA_GRID, MIN_GAMMA_GRID)),
            CommandKind::Image => Some((DEFAULT_C_GRID, 2)),
            CommandKind::Classify | CommandKind::Polygon => None,
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the couplings were given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemSpec {
    Couplings(Couplings),
    Weights(SWeights),
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub r1: f64,
    pub r2: f64,
    pub system: SystemSpec,
    pub grid: Option<usize>,
    pub zeta_grid: Option<usize>,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn params(&self) -> Result<SystemParams> {
        let p = match self.system {
            SystemSpec::Couplings(t) => SystemParams::new(self.r1, self.r2, t)?,
            SystemSpec::Weights(s) => SystemParams::from_weights(self.r1, self.r2, s)?,
        };
        Ok(p)
    }

    pub fn grid(&self) -> usize {
        self.grid.expect("grid is set for gridded commands")
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "R")]
    radii: Option<[f64; 2]>,
    t: Option<[f64; 4]>,
    s: Option<[f64; 2]>,
    grid: Option<usize>,
    zeta_grid: Option<usize>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

fn read_file_config(path: &Path) -> Result<FileConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

const DEFAULT_RADII: [f64; 2] = [1.0, 2.0];
const DEFAULT_COUPLINGS: [f64; 4] = [0.25, 0.25, 0.5, 0.0];

/// Merges flags over the config file over built-in defaults and validates the result.
pub fn resolve(command: CommandKind, args: &CommonArgs) -> Result<RunConfig> {
    let file = match &args.config {
        Some(path) => read_file_config(path)?,
        None => FileConfig::default(),
    };
    if file.t.is_some() && file.s.is_some() {
        bail!("config file sets both t and s");
    }

    let [r1, r2] = match &args.radii {
        Some(v) => [v[0], v[1]],
        None => file.radii.unwrap_or(DEFAULT_RADII),
    };

    let system = if let Some(t) = &args.t {
        SystemSpec::Couplings(Couplings::new(t[0], t[1], t[2], t[3]))
    } else if let Some(s) = &args.s {
        SystemSpec::Weights(SWeights::new(s[0], s[1])?)
    } else if let Some(t) = file.t {
        SystemSpec::Couplings(Couplings::new(t[0], t[1], t[2], t[3]))
    } else if let Some(s) = file.s {
        SystemSpec::Weights(SWeights::new(s[0], s[1])?)
    } else {
        let [t1, t2, t3, t4] = DEFAULT_COUPLINGS;
        SystemSpec::Couplings(Couplings::new(t1, t2, t3, t4))
    };

    let grid = match command.grid_rule() {
        Some((default, min)) => {
            let n = args.grid.or(file.grid).unwrap_or(default);
            if n < min {
                bail!("--grid must be at least {min} for {command} (got {n})");
            }
            Some(n)
        }
        None => None,
    };

    let zeta_grid = match command {
        CommandKind::Image => {
            let m = args
                .zeta_grid
                .or(file.zeta_grid)
                .unwrap_or(semitoric_core::atlas::DEFAULT_ZETA_GRID);
            if m < 2 {
                bail!("--zeta-grid must be at least 2 (got {m})");
            }
            Some(m)
        }
        _ => None,
    };

    let tol = args
        .tol
        .or(file.tol)
        .unwrap_or(semitoric_core::atlas::DEFAULT_REFINE_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("--tol must be positive and finite (got {tol})");
    }

    let cfg = RunConfig {
        command,
        r1,
        r2,
        system,
        grid,
        zeta_grid,
        tol,
        out: args.out.clone().or(file.out),
        format: args.format.or(file.format).unwrap_or_default(),
    };
    cfg.params()?;
    Ok(cfg)
}
