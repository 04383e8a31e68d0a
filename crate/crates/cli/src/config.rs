//! Job files and the merge of file values with command-line flags.

use std::fmt::Debug;
use std::path::{Path, PathBuf};

use brio_core::delta::{BrioOptions, FlipSpeed};
use brio_core::verify::QuadratureConfig;
use serde::Deserialize;

use crate::args::{Common, DataArgs, FamilyArg, FlipArg, Format, Pair};
use crate::error::{CliError, Result};

/// A job file. Every field is optional; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub subcommand: Option<String>,
    pub left: Option<Pair>,
    pub right: Option<Pair>,
    pub base: Option<Pair>,
    pub tol_ode: Option<f64>,
    pub tol_root: Option<f64>,
    pub tol_weak: Option<f64>,
    pub flip_speed: Option<FlipArg>,
    pub arclength: Option<bool>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out_dir: Option<PathBuf>,
    pub family: Option<FamilyArg>,
    pub inverse: Option<bool>,
    pub span: Option<f64>,
    pub points: Option<usize>,
    pub t: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub cells: Option<Vec<usize>>,
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Merges flag values with job-file values. The file wins; each conflict is
/// reported on stderr.
pub struct Merger {
    file: JobConfig,
}

impl Merger {
    pub fn new(common: &Common, subcommand: &str) -> Result<Self> {
        let file = match &common.config {
            Some(path) => JobConfig::load(path)?,
            None => JobConfig::default(),
        };
        if let Some(s) = &file.subcommand {
            if s != subcommand {
                return Err(CliError::Config(format!(
                    "job file is for `{s}`, invoked as `{subcommand}`"
                )));
            }
        }
        Ok(Self { file })
    }

    pub fn file(&mut self) -> &mut JobConfig {
        &mut self.file
    }
}

/// File value if present, otherwise the flag value.
pub fn pick<T: PartialEq + Debug>(name: &str, flag: Option<T>, file: Option<T>) -> Option<T> {
    match (flag, file) {
        (Some(f), Some(c)) => {
            if f != c {
                eprintln!(
                    "warning: job file sets {name} = {c:?}, overriding --{} {f:?}",
                    name.replace('_', "-")
                );
            }
            Some(c)
        }
        (f, c) => c.or(f),
    }
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("{name} must be finite and positive, got {x}")))
    }
}

pub fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("{name} must be finite, got {x}")))
    }
}

pub fn require<T>(name: &str, x: Option<T>) -> Result<T> {
    x.ok_or_else(|| CliError::Usage(format!("missing --{} (flag or job file)", name.replace('_', "-"))))
}

/// Options common to all subcommands after merging and validation.
#[derive(Debug, Clone)]
pub struct Settings {
    pub out_dir: PathBuf,
    /// Requested format; each subcommand supplies its own default.
    pub format: Option<Format>,
    pub options: BrioOptions,
    pub quadrature: QuadratureConfig,
    pub tol_weak: f64,
    pub seed: u64,
}

impl Settings {
    pub fn resolve(common: &Common, m: &mut Merger) -> Result<Self> {
        let f = m.file();
        let mut options = BrioOptions::default();
        let tol_ode = pick("tol_ode", common.tol_ode, f.tol_ode.take()).unwrap_or(options.solver.ode.tol);
        options.solver.ode.tol = positive("tol_ode", tol_ode)?;
        let tol_root = pick("tol_root", common.tol_root, f.tol_root.take()).unwrap_or(options.solver.tol_root);
        options.solver.tol_root = positive("tol_root", tol_root)?;
        options.flip_speed = match pick("flip_speed", common.flip_speed, f.flip_speed.take()) {
            Some(FlipArg::Paper) => FlipSpeed::Paper,
            Some(FlipArg::Rh) | None => FlipSpeed::Rh,
        };
        let tol_weak = positive(
            "tol_weak",
            pick("tol_weak", common.tol_weak, f.tol_weak.take()).unwrap_or(1e-7),
        )?;
        let arclength = pick("arclength", common.arclength.then_some(true), f.arclength.take()).unwrap_or(false);
        let quadrature = QuadratureConfig {
            arclength,
            ..QuadratureConfig::default()
        };
        Ok(Self {
            out_dir: pick("out_dir", common.out_dir.clone(), f.out_dir.take()).unwrap_or_else(|| PathBuf::from(".")),
            format: pick("format", common.format, f.format.take()),
            options,
            quadrature,
            tol_weak,
            seed: pick("seed", common.seed, f.seed.take()).unwrap_or(0),
        })
    }
}

/// Merged Riemann data `[u_L, v_L], [u_R, v_R]`.
pub fn resolve_data(d: &DataArgs, m: &mut Merger) -> Result<([f64; 2], [f64; 2])> {
    let f = m.file();
    let left = require("left", pick("left", d.left, f.left.take()))?.0;
    let right = require("right", pick("right", d.right, f.right.take()))?.0;
    for (name, p) in [("left", left), ("right", right)] {
        finite(name, p[0])?;
        finite(name, p[1])?;
    }
    Ok((left, right))
}
