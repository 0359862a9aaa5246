use std::path::PathBuf;

use ansatz_core::exact::{parse_rational, ten_pow_neg, Rational};
use ansatz_core::scenario::{Case, Scenario, ScenarioJson};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ansatz", version, about = "Exact solvability reports for the coupled Kähler-Einstein / HYM equations under the Calabi ansatz")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the exact constants of a scenario.
    Constants(ConstantsArgs),
    /// Decide solvability, build the profile and reconstruct the potential.
    Solve(SolveArgs),
    /// Run the verification suite or named checks.
    Verify(VerifyArgs),
    /// Solvability across a range of k.
    Sweep(SweepArgs),
    /// Draw the profile as an SVG line chart.
    Plot(PlotArgs),
    /// Write scenario, constants and report as one JSON document.
    Export(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseArg {
    General,
    Even,
    Odd,
}

#[derive(Args, Debug, Clone)]
pub struct ScenarioArgs {
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m1: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub m2: i64,
    /// Positive rational p/q.
    #[arg(long, default_value = "1")]
    pub alpha1: String,
    /// Read the scenario from a JSON file instead (a scenario object, or a document with a "scenario" field).
    #[arg(long, conflicts_with_all = ["case", "k"])]
    pub scenario: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PrecisionArgs {
    /// Enclosure width exponent: intervals are 10^-N wide.
    #[arg(long, env = "ANSATZ_PRECISION_EXP", default_value_t = 30)]
    pub precision_exp: u32,
    /// Quadrature tolerance per node.
    #[arg(long, default_value = "1/1000000000000")]
    pub tol: String,
    /// Distance of the reconstruction grid from the endpoints.
    #[arg(long, default_value = "1/100")]
    pub eps: String,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long)]
    pub json: bool,
    /// Write the reconstruction table here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Interior sample count for the positivity check.
    #[arg(long, default_value_t = ansatz_core::profile::DEFAULT_SAMPLES)]
    pub samples: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run every check.
    #[arg(long, conflicts_with = "ids")]
    pub all: bool,
    /// Check ids, e.g. R-table alpha0-identity.
    pub ids: Vec<String>,
    #[arg(long)]
    pub json: bool,
    /// Print each check's detail lines.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long, default_value_t = 1)]
    pub k_min: u32,
    #[arg(long, default_value_t = 8)]
    pub k_max: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m1: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub m2: i64,
    #[arg(long, default_value = "1")]
    pub alpha1: String,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    /// SVG destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add the reconstructed s(τ), rescaled to the chart.
    #[arg(long)]
    pub with_s: bool,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn rational(flag: &str, text: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("--{flag} expects p/q, got {text:?}"))
}

fn case_of(c: CaseArg, m1: i64, m2: i64) -> Case {
    match c {
        CaseArg::General => Case::General { m1, m2 },
        CaseArg::Even => Case::EvenAlternating,
        CaseArg::Odd => Case::OddWeighted,
    }
}

pub fn build_scenario(c: CaseArg, k: u32, m1: i64, m2: i64, alpha1: &str) -> Result<Scenario> {
    Ok(Scenario::new(case_of(c, m1, m2), k, rational("alpha1", alpha1)?)?)
}

impl ScenarioArgs {
    pub fn resolve(&self) -> Result<Scenario> {
        if let Some(path) = &self.scenario {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let value: serde_json::Value = serde_json::from_str(&text).context("scenario file is not JSON")?;
            let value = value.get("scenario").cloned().unwrap_or(value);
            let j: ScenarioJson = serde_json::from_value(value).context("scenario JSON")?;
            return Ok(Scenario::from_json(&j)?);
        }
        let (Some(c), Some(k)) = (self.case, self.k) else {
            bail!("a scenario needs --case and --k (or --scenario FILE)");
        };
        build_scenario(c, k, self.m1, self.m2, &self.alpha1)
    }
}

impl PrecisionArgs {
    pub fn width(&self) -> Result<Rational> {
        if self.precision_exp == 0 || self.precision_exp > 200 {
            bail!("precision exponent must lie in 1..=200, got {}", self.precision_exp);
        }
        Ok(ten_pow_neg(self.precision_exp))
    }

    /// Fractional digits shown for enclosures.
    pub fn digits(&self) -> usize {
        self.precision_exp as usize
    }

    pub fn tol(&self) -> Result<Rational> {
        let t = rational("tol", &self.tol)?;
        if t <= Rational::from_integer(0.into()) {
            bail!("--tol must be positive");
        }
        Ok(t)
    }

    pub fn eps(&self) -> Result<Rational> {
        let e = rational("eps", &self.eps)?;
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        if e <= zero || e >= one {
            bail!("--eps must lie in (0, 1)");
        }
        Ok(e)
    }
}
