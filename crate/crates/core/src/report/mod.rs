//! The command layer behind the `tnum` binary: argument parsing, defaults
//! from `TNUM_CONFIG`, the six commands, and output.
//!
//! Exit codes: 0 success, 1 numerical failure (including failed rows), 2 bad
//! input or configuration.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::g12;
use crate::potential::{Dimension, RadialPotential};

pub use commands::execute;

#[derive(Debug, Parser)]
#[command(
    name = "tnum",
    version,
    about = "Bound-state spectra from the effective quantum number T"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Potential file: JSON config or two-column r,V CSV.
    #[arg(long, global = true)]
    pub potential: Option<PathBuf>,
    #[arg(long, global = true)]
    pub phi: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Solver tolerance (relative).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for batch solves.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Spatial dimension, 2 or 3.
    #[arg(long, global = true)]
    pub dim: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    Semiclassical,
    Exact,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum DotMethodArg {
    #[default]
    Exact,
    Semiclassical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum WeightArg {
    #[default]
    Literal,
    Dimension,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate φ for a potential, or fit φ to a spectrum file.
    Phi {
        /// Energy at which to evaluate the estimator.
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        /// Evaluate at the exact energy of state `n,l`.
        #[arg(long, value_parser = parse_pair)]
        state: Option<(u32, u32)>,
        /// Spectrum CSV (n,l,m,N,E or a `spectrum` report) to fit.
        #[arg(long)]
        fit: Option<PathBuf>,
        /// Radial weight of the estimator: `r²` always, or `r^{D−1}`.
        #[arg(long = "phi-weight", value_enum, default_value_t)]
        weight: WeightArg,
    },
    /// Semiclassical and/or exact levels side by side.
    Spectrum {
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        /// Largest l (3D) or |m| (2D).
        #[arg(long, default_value_t = 2)]
        l_max: u32,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
    },
    /// Splitting of (n, l) multiplets under a small deformation α.
    Deform {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// `paper` (α/2) or `derived` (2α).
        #[arg(long, default_value = "derived")]
        mode: String,
        /// Multiplet `n,l`; repeatable.
        #[arg(long = "state", value_parser = parse_pair, default_value = "0,1")]
        states: Vec<(u32, u32)>,
    },
    /// Quantum-dot spectrum: slab modes times in-plane levels.
    Dot {
        /// Dot JSON: {"d": ..., "inplane": {...}, "R": ...}.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Slab thickness; overrides the config.
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        method: DotMethodArg,
        #[arg(long, default_value_t = 2)]
        slab_max: u32,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        /// Emit every state below this energy instead of a box.
        #[arg(long)]
        ecut: Option<f64>,
    },
    /// Level ordering by T across a range of φ.
    SweepPhi {
        /// Explicit φ values, comma separated.
        #[arg(long, value_delimiter = ',')]
        phis: Vec<f64>,
        #[arg(long)]
        phi_min: Option<f64>,
        #[arg(long)]
        phi_max: Option<f64>,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Levels per φ.
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Exact (oracle) spectrum as an n,l,m,N,E table.
    Exact {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long, default_value_t = 4)]
        l_max: u32,
        /// Log-grid step of the radial solver.
        #[arg(long)]
        h: Option<f64>,
        /// Fixed outer cut-off for potentials without a wall.
        #[arg(long)]
        r_max: Option<f64>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected n,l but got '{s}'"))?;
    let parse = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("'{x}': {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Defaults read from the JSON file named by `TNUM_CONFIG`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileDefaults {
    /// A path, or an inline potential object.
    pub potential: Option<serde_json::Value>,
    pub phi: Option<f64>,
    pub dim: Option<u32>,
    pub format: Option<Format>,
    pub tol: Option<f64>,
    pub jobs: Option<usize>,
}

impl FileDefaults {
    pub fn from_env() -> Result<Self> {
        match std::env::var_os("TNUM_CONFIG") {
            Some(path) if !path.is_empty() => Self::from_path(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("TNUM_CONFIG {}: {e}", path.display())))?;
        let mut defaults: Self = serde_json::from_str(&text)?;
        // Relative potential paths are relative to the config file.
        if let Some(serde_json::Value::String(p)) = &defaults.potential {
            if let Some(dir) = path.parent() {
                let joined = dir.join(p);
                defaults.potential = Some(serde_json::Value::String(
                    joined.to_string_lossy().into_owned(),
                ));
            }
        }
        Ok(defaults)
    }
}

/// Flags merged over file defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    potential: Option<PotentialSource>,
    pub phi: Option<f64>,
    pub dim: Dimension,
    pub format: Format,
    pub tol: Option<f64>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone)]
enum PotentialSource {
    Path(PathBuf),
    Inline(serde_json::Value),
}

impl Settings {
    pub fn resolve(common: &Common, defaults: FileDefaults) -> Result<Self> {
        let potential = match (&common.potential, defaults.potential) {
            (Some(p), _) => Some(PotentialSource::Path(p.clone())),
            (None, Some(serde_json::Value::String(p))) => Some(PotentialSource::Path(p.into())),
            (None, Some(v)) => Some(PotentialSource::Inline(v)),
            (None, None) => None,
        };
        let dim = Dimension::try_from(common.dim.or(defaults.dim).unwrap_or(3))?;
        if let Some(tol) = common.tol.or(defaults.tol) {
            if !(tol > 0.0 && tol < 1e-2) {
                return Err(Error::InvalidParameter(format!(
                    "--tol {tol} must lie in (0, 0.01)"
                )));
            }
        }
        if common.jobs.or(defaults.jobs) == Some(0) {
            return Err(Error::InvalidParameter("--jobs must be at least 1".into()));
        }
        Ok(Self {
            potential,
            phi: common.phi.or(defaults.phi),
            dim,
            format: common.format.or(defaults.format).unwrap_or(Format::Csv),
            tol: common.tol.or(defaults.tol),
            jobs: common.jobs.or(defaults.jobs),
        })
    }

    pub fn potential(&self) -> Result<RadialPotential> {
        match &self.potential {
            Some(PotentialSource::Path(p)) => RadialPotential::from_path(p),
            Some(PotentialSource::Inline(v)) => RadialPotential::from_json_value(v.clone()),
            None => Err(Error::InvalidParameter(
                "a potential is required (--potential <file>)".into(),
            )),
        }
    }

    pub fn has_potential(&self) -> bool {
        self.potential.is_some()
    }
}

/// Result of one command: the document to write, and diagnostics for stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: String,
    pub notes: Vec<String>,
    /// Some rows failed; the rest of the body is still valid.
    pub partial_failure: bool,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run_cli(cli) {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            i32::from(outcome.partial_failure)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                2
            } else {
                1
            }
        }
    }
}

fn run_cli(cli: Cli) -> Result<Outcome> {
    let settings = Settings::resolve(&cli.common, FileDefaults::from_env()?)?;
    let outcome = match settings.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("--jobs {jobs}: {e}")))?
            .install(|| execute(&cli.command, &settings))?,
        None => execute(&cli.command, &settings)?,
    };
    match &cli.common.out {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => std::io::stdout().write_all(outcome.body.as_bytes())?,
    }
    Ok(outcome)
}

/// A number rounded to the crate-wide 12 significant digits, for JSON output.
fn json_num(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(g12(x).parse::<f64>().expect("formatted float parses"))
    } else {
        serde_json::Value::Null
    }
}

fn json_opt(x: Option<f64>) -> serde_json::Value {
    x.map_or(serde_json::Value::Null, json_num)
}

/// Every float in the document goes out at 12 significant digits.
fn round_floats(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Number(n) if n.is_f64() => {
            *value = json_num(n.as_f64().unwrap_or(f64::NAN))
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_floats),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json_body(value: &serde_json::Value) -> String {
    let mut value = value.clone();
    round_floats(&mut value);
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags_anywhere() {
        let cli = Cli::try_parse_from([
            "tnum", "spectrum", "--phi", "0.5", "--n-max", "3", "--format", "json",
        ])
        .unwrap();
        assert_eq!(cli.common.phi, Some(0.5));
        assert_eq!(cli.common.format, Some(Format::Json));
        assert!(matches!(cli.command, Command::Spectrum { n_max: 3, .. }));
        let cli = Cli::try_parse_from([
            "tnum", "deform", "--alpha", "-0.05", "--state", "1,2", "--state", "0,3",
        ])
        .unwrap();
        match cli.command {
            Command::Deform { alpha, states, .. } => {
                assert_eq!(alpha, -0.05);
                assert_eq!(states, vec![(1, 2), (0, 3)]);
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["tnum", "phi", "--state", "1"]).is_err());
    }

    #[test]
    fn flags_override_file_defaults() {
        let defaults: FileDefaults =
            serde_json::from_str(r#"{"phi": 0.3, "dim": 2, "format": "json", "potential": {"type": "hard_wall", "R": 2}}"#)
                .unwrap();
        let common = Common {
            phi: Some(0.7),
            ..Common::default()
        };
        let s = Settings::resolve(&common, defaults).unwrap();
        assert_eq!(s.phi, Some(0.7));
        assert_eq!(s.dim, Dimension::Two);
        assert_eq!(s.format, Format::Json);
        assert_eq!(
            s.potential().unwrap(),
            RadialPotential::hard_wall(2.0).unwrap()
        );
        assert!(serde_json::from_str::<FileDefaults>(r#"{"bogus": 1}"#).is_err());
        let bad = Common {
            dim: Some(4),
            ..Common::default()
        };
        assert!(matches!(
            Settings::resolve(&bad, FileDefaults::default()),
            Err(Error::Dimension(4))
        ));
    }
}
