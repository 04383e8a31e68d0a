use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

/// Exact Riemann solver and δ-shock construction for the Brio system.
#[derive(Debug, Parser)]
#[command(name = "brio", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a Riemann problem and write the δ-solution as JSON.
    Solve(SolveArgs),
    /// Tabulate shock and rarefaction curves through a base state.
    Curves(CurvesArgs),
    /// Sample the solution at a fixed time, with a singularity sidecar.
    Sample(SampleArgs),
    /// Run the seeded property suite; exits with 2 if a check fails.
    Verify(VerifyArgs),
    /// Compare the exact fan with a Rusanov scheme under grid refinement.
    #[command(name = "fv-compare")]
    FvCompare(FvCompareArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Curves(_) => "curves",
            Command::Sample(_) => "sample",
            Command::Verify(_) => "verify",
            Command::FvCompare(_) => "fv-compare",
        }
    }
}

/// Two comma-separated numbers such as `1,5` or `-0.3,2`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(from = "[f64; 2]")]
pub struct Pair(pub [f64; 2]);

impl From<[f64; 2]> for Pair {
    fn from(p: [f64; 2]) -> Self {
        Pair(p)
    }
}

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b] = parts.as_slice() else {
            return Err(format!("expected two comma-separated numbers, got {s:?}"));
        };
        let parse = |x: &str| x.parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        Ok(Pair([parse(a)?, parse(b)?]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipArg {
    /// Rankine–Hugoniot speed `U_M − 1`.
    Rh,
    /// Speed `U_M`.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    All,
    Sw1,
    Sw2,
    Rw1,
    Rw2,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON job file; its values win over conflicting flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory receiving the output files.
    #[arg(long, env = "BRIO_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Local error tolerance of the rarefaction integrator.
    #[arg(long)]
    pub tol_ode: Option<f64>,
    /// Bracket width at which the middle-state root search stops.
    #[arg(long)]
    pub tol_root: Option<f64>,
    /// Bound on normalized weak residuals in `verify`.
    #[arg(long)]
    pub tol_weak: Option<f64>,
    /// Speed of the shock that flips the sign of `v`.
    #[arg(long, value_enum)]
    pub flip_speed: Option<FlipArg>,
    /// Weight singular line terms by arclength along their carriers.
    #[arg(long)]
    pub arclength: bool,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Riemann data in the original variables.
#[derive(Debug, Clone, Default, Args)]
pub struct DataArgs {
    /// Left state `u,v`.
    #[arg(long, allow_hyphen_values = true)]
    pub left: Option<Pair>,
    /// Right state `u,v`.
    #[arg(long, allow_hyphen_values = true)]
    pub right: Option<Pair>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    /// Base state `u,q` in energy variables.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<Pair>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Also tabulate the inverse 2-curves through the base as a right state.
    #[arg(long)]
    pub inverse: bool,
    /// Width of the `u`-interval covered by each curve.
    #[arg(long)]
    pub span: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Sampling time.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct FvCompareArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Comma-separated cell counts.
    #[arg(long, value_delimiter = ',')]
    pub cells: Option<Vec<usize>>,
    #[arg(long)]
    pub cfl: Option<f64>,
    #[arg(long)]
    pub t_final: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn pairs_parse() {
        assert_eq!("1,5".parse::<Pair>().unwrap(), Pair([1.0, 5.0]));
        assert_eq!(" -0.3 , 2".parse::<Pair>().unwrap(), Pair([-0.3, 2.0]));
        assert!("1".parse::<Pair>().is_err());
        assert!("1,2,3".parse::<Pair>().is_err());
        assert!("a,2".parse::<Pair>().is_err());
    }

    #[test]
    fn negative_states_are_accepted() {
        let cli = Cli::try_parse_from(["brio", "solve", "--left", "-1,2", "--right", "0.5,-1"]).unwrap();
        let Command::Solve(a) = cli.command else { panic!() };
        assert_eq!(a.data.left, Some(Pair([-1.0, 2.0])));
        assert_eq!(a.data.right, Some(Pair([0.5, -1.0])));
    }
}
