//! `softarm` command-line front end.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "softarm",
    version,
    about = "Cross-section, force and scaling analysis for soft fluidic segments"
)]
struct Cli {
    /// Flat `key = value` run configuration.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or rank the rubber catalogue.
    Materials(MaterialsArgs),
    /// Predict a force-pressure curve for a cross-section.
    Predict(PredictArgs),
    /// Map a curve onto another rubber or another diameter.
    Scale(ScaleArgs),
    /// Fit the stiffness ratio between two curves.
    Fit(FitArgs),
    /// Compare designs at a common outer diameter.
    Compare(CompareArgs),
    /// Check a cross-section against geometry and the requirements profile.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Morph {
    None,
    Ideal,
}

#[derive(Args, Debug)]
pub struct MaterialsArgs {
    /// Materials CSV instead of the built-in catalogue.
    #[arg(long, value_name = "CSV")]
    pub file: Option<PathBuf>,
    /// Rank by stiffness among materials reaching `--strain`.
    #[arg(long, requires = "strain")]
    pub rank: bool,
    /// Required ultimate strain, percent.
    #[arg(long, value_name = "PCT")]
    pub strain: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    /// Cross-section spec, `key = value`.
    #[arg(long, value_name = "FILE")]
    pub spec: PathBuf,
    #[arg(long, default_value = "Elastosil M4601")]
    pub material: String,
    /// Materials CSV to look `--material` up in.
    #[arg(long, value_name = "CSV")]
    pub materials: Option<PathBuf>,
    /// Strictly increasing pressures, kPa.
    #[arg(long, value_delimiter = ',', required = true, value_name = "KPA,..")]
    pub pressures: Vec<f64>,
    /// Segment length, mm.
    #[arg(long, default_value_t = softarm::mechanics::SegmentDesign::REFERENCE_LENGTH)]
    pub length: f64,
    /// Rated pressure, kPa; defaults to the profile limit.
    #[arg(long, value_name = "KPA")]
    pub max_pressure: Option<f64>,
    #[arg(long, value_enum, default_value = "none")]
    pub morph: Morph,
    /// Pressurised chamber indices.
    #[arg(long, value_delimiter = ',', default_value = "0", value_name = "I,..")]
    pub pressurized: Vec<usize>,
    #[arg(long)]
    pub area_gain: Option<f64>,
    #[arg(long)]
    pub lever_gain: Option<f64>,
    /// Skip the requirements profile checks.
    #[arg(long)]
    pub no_profile: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("law").required(true).args(["c10_from", "d_from"])))]
pub struct ScaleArgs {
    /// Force-pressure CSV; defaults to `curve` from the config.
    #[arg(long, value_name = "CSV")]
    pub curve: Option<PathBuf>,
    #[arg(long, requires = "c10_to", value_name = "KPA")]
    pub c10_from: Option<f64>,
    #[arg(long, requires = "c10_from", value_name = "KPA")]
    pub c10_to: Option<f64>,
    #[arg(
        long,
        requires = "d_to",
        conflicts_with = "c10_from",
        value_name = "MM"
    )]
    pub d_from: Option<f64>,
    #[arg(long, requires = "d_from", value_name = "MM")]
    pub d_to: Option<f64>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Curve to be scaled.
    #[arg(long, value_name = "CSV")]
    pub a: PathBuf,
    /// Reference curve.
    #[arg(long, value_name = "CSV")]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Design records CSV; defaults to the shipped record set.
    #[arg(long, value_name = "CSV")]
    pub records: Option<PathBuf>,
    /// Comparison diameter, mm; defaults to the config value or 12.
    #[arg(long, value_name = "MM")]
    pub target_od: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Also write the bar-chart series here.
    #[arg(long, value_name = "CSV")]
    pub plot_data: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long, value_name = "FILE")]
    pub spec: PathBuf,
    /// Check geometry only.
    #[arg(long)]
    pub no_profile: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result =
        config::RunConfig::load_or_default(cli.config.as_deref()).and_then(|cfg| {
            match &cli.command {
                Command::Materials(a) => commands::materials(&cfg, a),
                Command::Predict(a) => commands::predict(&cfg, a),
                Command::Scale(a) => commands::scale(&cfg, a),
                Command::Fit(a) => commands::fit(a),
                Command::Compare(a) => commands::compare(&cfg, a),
                Command::Validate(a) => commands::validate(&cfg, a),
            }
        });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
