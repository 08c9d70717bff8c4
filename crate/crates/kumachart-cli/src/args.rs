//! Command-line interface definition.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kumachart::{CenterMode, Method};
use std::path::PathBuf;

/// Shewhart control charts for continuous proportions on (0, 1) under the
/// Kumaraswamy distribution.
#[derive(Debug, Parser)]
#[command(name = "kumachart", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw random observations from a Kumaraswamy distribution.
    Simulate(SimulateArgs),
    /// Fit Kumaraswamy parameters to a sample by maximum likelihood.
    Fit(FitArgs),
    /// Compute two-sided probability control limits.
    Limits(LimitsArgs),
    /// Monte Carlo study of in-control run length under estimated parameters.
    IcStudy(IcStudyArgs),
    /// Search for an adjusted false-alarm rate that compensates for
    /// estimation error.
    Calibrate(CalibrateArgs),
    /// Monte Carlo study of out-of-control run length over a grid of shifts.
    OocStudy(OocStudyArgs),
    /// Judge observations against control limits built from a Phase I sample.
    Chart(ChartArgs),
}

/// Monte Carlo knobs shared by every command that simulates.
#[derive(Debug, Args)]
pub struct McArgs {
    /// Number of Monte Carlo replications.
    #[arg(long, default_value_t = 10_000, value_name = "N")]
    pub reps: usize,

    /// Master RNG seed; drawn from system entropy (and echoed to stderr)
    /// when omitted.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Calibration tolerance: for method A the relative half-width of the
    /// average-ARL band, for method B the cap on the exceedance fraction.
    #[arg(long, default_value_t = 0.05, value_name = "P")]
    pub p: f64,

    /// Guardband for method B: conditional ARLs below ARL0/(1+epsilon)
    /// count as exceedances.
    #[arg(long, default_value_t = 0.0, value_name = "EPS")]
    pub epsilon: f64,

    /// Spacing of the candidate false-alarm-rate grid.
    #[arg(long, default_value_t = kumachart::DEFAULT_GRID_STEP, value_name = "STEP")]
    pub grid_step: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// First shape parameter of the distribution to sample.
    #[arg(long, value_name = "THETA1")]
    pub theta1: f64,

    /// Second shape parameter of the distribution to sample.
    #[arg(long, value_name = "THETA2")]
    pub theta2: f64,

    /// Number of observations to draw.
    #[arg(long, short = 'n', value_name = "COUNT")]
    pub m: usize,

    /// RNG seed; drawn from system entropy (and echoed to stderr) when
    /// omitted.
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Output file, one observation per line (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Data file: one value in (0, 1) per line; blank lines and lines
    /// starting with '#' are ignored.
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,

    /// Also write a JSON report here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    /// First shape parameter of the design distribution (with --theta2;
    /// exclusive with --data).
    #[arg(
        long,
        value_name = "THETA1",
        requires = "theta2",
        conflicts_with = "data"
    )]
    pub theta1: Option<f64>,

    /// Second shape parameter of the design distribution.
    #[arg(
        long,
        value_name = "THETA2",
        requires = "theta1",
        conflicts_with = "data"
    )]
    pub theta2: Option<f64>,

    /// Phase I data file; the design distribution is estimated from it and
    /// the limits are plug-in.
    #[arg(long, value_name = "FILE", required_unless_present = "theta1")]
    pub data: Option<PathBuf>,

    /// Nominal false-alarm rate.
    #[arg(long, default_value_t = 0.0027, value_name = "ALPHA")]
    pub alpha: f64,

    /// Use this exact false-alarm rate instead of --alpha, skipping any
    /// adjustment.
    #[arg(long, value_name = "FAR", conflicts_with = "adjust")]
    pub far: Option<f64>,

    /// Adjust the false-alarm rate before computing the limits.
    #[arg(long, value_enum, default_value_t = AdjustChoice::None)]
    pub adjust: AdjustChoice,

    /// Center-line statistic.
    #[arg(long, value_enum, default_value_t = CenterChoice::Median)]
    pub center: CenterChoice,

    /// Phase I sample size the adjustment simulates (defaults to the data
    /// length; required with --adjust when the parameters are explicit).
    #[arg(long, value_name = "M")]
    pub m: Option<usize>,

    #[command(flatten)]
    pub mc: McArgs,

    /// Also write a JSON report here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IcStudyArgs {
    /// First shape parameter of the true in-control distribution.
    #[arg(long, value_name = "THETA1")]
    pub theta1: f64,

    /// Second shape parameter of the true in-control distribution.
    #[arg(long, value_name = "THETA2")]
    pub theta2: f64,

    /// Phase I sample size per replication.
    #[arg(long, value_name = "M")]
    pub m: usize,

    /// Nominal false-alarm rate.
    #[arg(long, default_value_t = 0.0027, value_name = "ALPHA")]
    pub alpha: f64,

    /// How each replication sets its limits.
    #[arg(long, value_enum, default_value_t = RuleChoice::Plugin)]
    pub rule: RuleChoice,

    #[command(flatten)]
    pub mc: McArgs,

    /// Also write a JSON report here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// First shape parameter of the true in-control distribution.
    #[arg(long, value_name = "THETA1")]
    pub theta1: f64,

    /// Second shape parameter of the true in-control distribution.
    #[arg(long, value_name = "THETA2")]
    pub theta2: f64,

    /// Phase I sample size per replication.
    #[arg(long, value_name = "M")]
    pub m: usize,

    /// Nominal false-alarm rate.
    #[arg(long, default_value_t = 0.0027, value_name = "ALPHA")]
    pub alpha: f64,

    /// Adjustment criterion.
    #[arg(long, value_enum)]
    pub method: MethodChoice,

    #[command(flatten)]
    pub mc: McArgs,

    /// Also write a JSON report here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OocStudyArgs {
    /// First shape parameter of the true in-control distribution.
    #[arg(long, value_name = "THETA1")]
    pub theta1: f64,

    /// Second shape parameter of the true in-control distribution.
    #[arg(long, value_name = "THETA2")]
    pub theta2: f64,

    /// Phase I sample size per replication.
    #[arg(long, value_name = "M")]
    pub m: usize,

    /// Nominal false-alarm rate.
    #[arg(long, default_value_t = 0.0027, value_name = "ALPHA")]
    pub alpha: f64,

    /// How each replication sets its limits.
    #[arg(long, value_enum, default_value_t = RuleChoice::Plugin)]
    pub rule: RuleChoice,

    /// Multipliers applied to the first shape parameter:
    /// START:STOP:STEP or V1,V2,...
    #[arg(long, value_name = "GRID")]
    pub delta1_grid: Option<String>,

    /// Multipliers applied to the second shape parameter:
    /// START:STOP:STEP or V1,V2,...
    #[arg(long, value_name = "GRID")]
    pub delta2_grid: Option<String>,

    /// Cross the two grids (required to pass both of them at once).
    #[arg(long)]
    pub allow_both: bool,

    /// Write every conditional ARL here (TSV: delta1, delta2, carl).
    #[arg(long, value_name = "FILE")]
    pub dump_samples: Option<PathBuf>,

    #[command(flatten)]
    pub mc: McArgs,

    /// Write the study table here as TSV (stdout always shows a readable
    /// table).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    /// Phase I (calibration) data file; the limits are estimated from it.
    #[arg(long, value_name = "FILE")]
    pub phase1: PathBuf,

    /// Phase II (monitoring) data file, plotted after the Phase I points.
    #[arg(long, value_name = "FILE")]
    pub phase2: Option<PathBuf>,

    /// Nominal false-alarm rate.
    #[arg(long, default_value_t = 0.0027, value_name = "ALPHA")]
    pub alpha: f64,

    /// Use this exact false-alarm rate instead of --alpha, skipping any
    /// adjustment.
    #[arg(long, value_name = "FAR", conflicts_with = "adjust")]
    pub far: Option<f64>,

    /// Adjust the false-alarm rate before computing the limits.
    #[arg(long, value_enum, default_value_t = AdjustChoice::None)]
    pub adjust: AdjustChoice,

    /// Center-line statistic.
    #[arg(long, value_enum, default_value_t = CenterChoice::Median)]
    pub center: CenterChoice,

    #[command(flatten)]
    pub mc: McArgs,

    /// Write plotting data here (TSV: index, value, lcl, cl, ucl, status).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// Keep the average in-control ARL within a band around the nominal.
    A,
    /// Cap the fraction of charts whose in-control ARL falls short.
    B,
}

impl From<MethodChoice> for Method {
    fn from(choice: MethodChoice) -> Self {
        match choice {
            MethodChoice::A => Method::A,
            MethodChoice::B => Method::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleChoice {
    /// Plug the estimates into the exact limits at the nominal rate.
    Plugin,
    /// Calibrate with method A first, then plug in at the adjusted rate.
    A,
    /// Calibrate with method B first, then plug in at the adjusted rate.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdjustChoice {
    /// No adjustment.
    None,
    /// Method A (average-ARL band).
    A,
    /// Method B (exceedance cap).
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CenterChoice {
    /// Median of the design distribution.
    Median,
    /// Mean of the design distribution.
    Mean,
}

impl From<CenterChoice> for CenterMode {
    fn from(choice: CenterChoice) -> Self {
        match choice {
            CenterChoice::Median => CenterMode::Median,
            CenterChoice::Mean => CenterMode::Mean,
        }
    }
}
