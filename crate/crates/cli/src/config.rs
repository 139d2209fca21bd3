//! Argument parsing and `--config` merging into a validated [`RunConfig`].

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use torusq_core::classical::DEFAULT_DT;
use torusq_core::ModuliPoint;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum,
    Charpoly { check: bool, strict: bool },
    Vacuum { kinetic_off: bool },
    Factorize { dims: Vec<usize> },
    Classical { q0: f64, p0: f64, t: f64, dt: f64 },
    Limits { q0: f64, p0: f64 },
    Scan { delta_steps: usize },
    Certify { second: ModuliPoint },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Charpoly { .. } => "charpoly",
            Command::Vacuum { .. } => "vacuum",
            Command::Factorize { .. } => "factorize",
            Command::Classical { .. } => "classical",
            Command::Limits { .. } => "limits",
            Command::Scan { .. } => "scan",
            Command::Certify { .. } => "certify",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Charpoly { .. } | Command::Certify { .. } => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Absent only for `limits`, which always works at `beta = 1, delta = 0`.
    pub moduli: Option<ModuliPoint>,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(name = "torusq", version, about = "Quantum mechanics on a torus phase space")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Eigenvalues (CSV) or full decomposition and Hamiltonian (JSON).
    Spectrum(Common),
    /// Closed-form characteristic polynomial, optionally checked.
    Charpoly {
        #[command(flatten)]
        common: Common,
        /// Compare with the Faddeev–LeVerrier oracle.
        #[arg(long)]
        check: bool,
        /// With --check, exit 1 when the comparison fails.
        #[arg(long)]
        strict: bool,
    },
    /// Vacuum energy, gap and localization.
    Vacuum {
        #[command(flatten)]
        common: Common,
        /// Degeneracy pairing of the bare potential instead (needs delta = 0).
        #[arg(long)]
        kinetic_off: bool,
    },
    /// Factorization defect of the characteristic polynomial across the corner block.
    Factorize {
        #[command(flatten)]
        common: Common,
        /// Comma-separated dimensions, each >= 7.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
    },
    /// Störmer–Verlet trajectory of the classical Hamiltonian.
    Classical {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Full, sine-Gordon and harmonic energies at a phase-space point.
    Limits {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Spectra over a uniform delta grid at fixed beta.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta_steps: Option<usize>,
    },
    /// Duality certificate for two moduli points.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta2: Option<f64>,
        /// Defaults to --beta.
        #[arg(long)]
        beta2: Option<f64>,
        /// Defaults to --dim.
        #[arg(long)]
        dim2: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Radians.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Explicit Hilbert dimension.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON file with the same fields; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long, allow_negative_numbers = true)]
    q0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    p0: Option<f64>,
}

/// Contents of a `--config` document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    beta: Option<f64>,
    delta: Option<f64>,
    dim: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
    delta_steps: Option<usize>,
    t: Option<f64>,
    dt: Option<f64>,
    q0: Option<f64>,
    p0: Option<f64>,
    check: Option<bool>,
    strict: Option<bool>,
    kinetic_off: Option<bool>,
    n_list: Option<Vec<usize>>,
    delta2: Option<f64>,
    beta2: Option<f64>,
    dim2: Option<usize>,
}

pub const DEFAULT_DELTA_STEPS: usize = 64;

/// Parse `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::from_clap)?;
    build(cli.command)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn finite(name: &str, x: Option<f64>) -> Result<Option<f64>, CliError> {
    match x {
        Some(v) if !v.is_finite() => Err(usage(format!("--{name} must be finite, got {v}"))),
        _ => Ok(x),
    }
}

fn load(path: &Option<PathBuf>) -> Result<ConfigFile, CliError> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
}

struct Merged {
    beta: Option<f64>,
    delta: f64,
    dim: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
    file: ConfigFile,
}

fn merge(common: Common) -> Result<Merged, CliError> {
    let file = load(&common.config)?;
    Ok(Merged {
        beta: finite("beta", common.beta.or(file.beta))?,
        delta: finite("delta", common.delta.or(file.delta))?.unwrap_or(0.0),
        dim: common.dim.or(file.dim),
        out: common.out.or_else(|| file.out.clone()),
        format: common.format.or(file.format),
        file,
    })
}

fn moduli(beta: Option<f64>, delta: f64, dim: Option<usize>) -> Result<ModuliPoint, CliError> {
    let beta = beta.ok_or_else(|| usage("--beta is required"))?;
    ModuliPoint::new(beta, delta, dim).map_err(|e| match e {
        torusq_core::Error::Domain(msg) => usage(msg),
        other => usage(other.to_string()),
    })
}

fn build(sub: Sub) -> Result<RunConfig, CliError> {
    let (common, extra) = split(sub);
    let m = merge(common)?;
    let f = &m.file;
    let command = match extra {
        Extra::Spectrum => Command::Spectrum,
        Extra::Charpoly { check, strict } => Command::Charpoly {
            check: check || f.check.unwrap_or(false),
            strict: strict || f.strict.unwrap_or(false),
        },
        Extra::Vacuum { kinetic_off } => Command::Vacuum {
            kinetic_off: kinetic_off || f.kinetic_off.unwrap_or(false),
        },
        Extra::Factorize { n_list } => {
            let dims = match n_list.or_else(|| f.n_list.clone()) {
                Some(d) if d.is_empty() => return Err(usage("--n-list is empty")),
                Some(d) => d,
                None => vec![m.dim.ok_or_else(|| usage("factorize needs --n-list or --dim"))?],
            };
            Command::Factorize { dims }
        }
        Extra::Classical { q0, p0, t, dt } => {
            let t = finite("t", t.or(f.t))?.ok_or_else(|| usage("--t is required"))?;
            let dt = finite("dt", dt.or(f.dt))?.unwrap_or(DEFAULT_DT);
            if t <= 0.0 || dt <= 0.0 || dt > t {
                return Err(usage(format!("need 0 < dt <= t, got t = {t}, dt = {dt}")));
            }
            Command::Classical {
                q0: finite("q0", q0.or(f.q0))?.unwrap_or(0.0),
                p0: finite("p0", p0.or(f.p0))?.unwrap_or(0.0),
                t,
                dt,
            }
        }
        Extra::Limits { q0, p0 } => Command::Limits {
            q0: finite("q0", q0.or(f.q0))?.unwrap_or(0.0),
            p0: finite("p0", p0.or(f.p0))?.unwrap_or(0.0),
        },
        Extra::Scan { delta_steps } => {
            let steps = delta_steps.or(f.delta_steps).unwrap_or(DEFAULT_DELTA_STEPS);
            if steps == 0 {
                return Err(usage("--delta-steps must be at least 1"));
            }
            Command::Scan { delta_steps: steps }
        }
        Extra::Certify { delta2, beta2, dim2 } => {
            let delta2 = finite("delta2", delta2.or(f.delta2))?
                .ok_or_else(|| usage("--delta2 is required"))?;
            let beta2 = finite("beta2", beta2.or(f.beta2))?.or(m.beta);
            let dim2 = dim2.or(f.dim2).or(m.dim);
            Command::Certify {
                second: moduli(beta2, delta2, dim2)?,
            }
        }
    };
    let moduli = match command {
        Command::Limits { .. } => None,
        _ => Some(moduli(m.beta, m.delta, m.dim)?),
    };
    let format = m.format.unwrap_or_else(|| command.default_format());
    Ok(RunConfig {
        command,
        moduli,
        output: m.out,
        format,
    })
}

enum Extra {
    Spectrum,
    Charpoly { check: bool, strict: bool },
    Vacuum { kinetic_off: bool },
    Factorize { n_list: Option<Vec<usize>> },
    Classical { q0: Option<f64>, p0: Option<f64>, t: Option<f64>, dt: Option<f64> },
    Limits { q0: Option<f64>, p0: Option<f64> },
    Scan { delta_steps: Option<usize> },
    Certify { delta2: Option<f64>, beta2: Option<f64>, dim2: Option<usize> },
}

fn split(sub: Sub) -> (Common, Extra) {
    match sub {
        Sub::Spectrum(c) => (c, Extra::Spectrum),
        Sub::Charpoly { common, check, strict } => (common, Extra::Charpoly { check, strict }),
        Sub::Vacuum { common, kinetic_off } => (common, Extra::Vacuum { kinetic_off }),
        Sub::Factorize { common, n_list } => (common, Extra::Factorize { n_list }),
        Sub::Classical { common, state, t, dt } => (
            common,
            Extra::Classical { q0: state.q0, p0: state.p0, t, dt },
        ),
        Sub::Limits { common, state } => (common, Extra::Limits { q0: state.q0, p0: state.p0 }),
        Sub::Scan { common, delta_steps } => (common, Extra::Scan { delta_steps }),
        Sub::Certify { common, delta2, beta2, dim2 } => {
            (common, Extra::Certify { delta2, beta2, dim2 })
        }
    }
}
