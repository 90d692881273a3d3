//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "pwilab",
    version,
    about = "Interval exchanges, planar piecewise isometries and their embeddings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Interval exchange transformations.
    #[command(subcommand)]
    Iet(IetCommand),
    /// Planar piecewise isometries.
    #[command(subcommand)]
    Pwi(PwiCommand),
    /// Connecting graph, rotation sum and parametric coefficients of a permutation.
    Graph(GraphArgs),
    /// Embedding diagnostics.
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Rerun a worked example and compare against its reference values.
    Reproduce(ReproduceArgs),
    /// Render orbits as SVG.
    Plot(PlotArgs),
}

#[derive(Args, Debug, Clone)]
pub struct IetSpec {
    /// Interval lengths, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub lengths: String,
    /// Permutation in one-line (`4,2,1,3`) or cycle (`(2)(143)`) notation.
    #[arg(long)]
    pub perm: String,
}

#[derive(Args, Debug, Clone)]
pub struct PwiSource {
    /// PWI JSON file.
    #[arg(long, conflicts_with = "case")]
    pub config: Option<PathBuf>,
    /// Use the system of a built-in worked example instead of a file.
    #[arg(long)]
    pub case: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Seed {
    #[arg(long = "seed-re", default_value_t = 0.0, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long = "seed-im", default_value_t = 0.0, allow_hyphen_values = true)]
    pub im: f64,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum IetCommand {
    /// Apply `f` (or its inverse) to a point.
    Apply {
        #[command(flatten)]
        iet: IetSpec,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Orbit and itinerary of a point.
    Orbit {
        #[command(flatten)]
        iet: IetSpec,
        #[arg(long, default_value_t = 0.0)]
        x: f64,
        #[arg(long, value_parser = positive_usize, default_value = "100")]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Rauzy-Veech induction.
    Rauzy {
        #[command(flatten)]
        iet: IetSpec,
        /// Number of induction steps.
        #[arg(long, value_parser = positive_usize, default_value = "1")]
        level: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Statistics of the orbit of `0`.
    Stats {
        #[command(flatten)]
        iet: IetSpec,
        #[arg(long, value_parser = positive_usize, default_value = "100000")]
        steps: usize,
        /// Number of closest-return times to report.
        #[arg(long, value_parser = positive_usize, default_value = "8")]
        level: usize,
        #[arg(long, value_parser = positive_usize, default_value = "10000000")]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum PwiCommand {
    /// Orbit of a seed; CSV rows go to `--orbit-out` or standard output.
    Orbit {
        #[command(flatten)]
        source: PwiSource,
        #[command(flatten)]
        seed: Seed,
        #[arg(long, value_parser = positive_usize, default_value = "10000")]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        transient: usize,
        #[arg(long = "orbit-out")]
        orbit_out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Successive first returns to a union of atoms.
    Return {
        #[command(flatten)]
        source: PwiSource,
        #[command(flatten)]
        seed: Seed,
        /// Atoms forming the section, 1-based and comma separated.
        #[arg(long)]
        section: String,
        /// Number of successive returns.
        #[arg(long, value_parser = positive_usize, default_value = "1")]
        steps: usize,
        #[arg(long, value_parser = positive_usize, default_value = "10000000")]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub perm: String,
    /// Rotation angles for the coefficients; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Starting vertex of the connecting sequence.
    #[arg(long, default_value_t = 0)]
    pub p0: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Subcommand, Debug)]
pub enum EmbedCommand {
    /// Symbolic match, ergodic averages and residual of an IET against a PWI.
    Check {
        #[command(flatten)]
        source: PwiSource,
        #[command(flatten)]
        iet: IetSpec,
        /// Anchor `h(0)`.
        #[command(flatten)]
        seed: Seed,
        /// Horizon of the symbolic match.
        #[arg(long, value_parser = positive_usize, default_value = "100000")]
        steps: usize,
        #[arg(long, value_parser = positive_usize, default_value = "8")]
        level: usize,
        #[arg(long, value_parser = positive_usize, default_value = "10000000")]
        cap: usize,
        /// Interval coded by each atom, 1-based; identity when omitted.
        #[arg(long)]
        alignment: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// `paper-3pwi`, `paper-4cone` or `all`.
    pub case: String,
    /// Also write the orbit of the anchor as CSV.
    #[arg(long = "orbit-out")]
    pub orbit_out: Option<PathBuf>,
    #[arg(long, value_parser = positive_usize, default_value = "100000")]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub transient: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Scatter,
    Cylinder,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long, value_enum, default_value_t = Style::Scatter)]
    pub style: Style,
    #[arg(long)]
    pub out: PathBuf,
    /// Orbit CSV files to draw.
    #[arg(long = "input", num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Draw atom boundaries of this PWI; with `--case` and no inputs, also its orbit.
    #[command(flatten)]
    pub source: PwiSource,
    #[command(flatten)]
    pub seed: Seed,
    /// Marker radius in viewport units.
    #[arg(long, default_value_t = crate::svg::DEFAULT_RADIUS)]
    pub radius: f64,
    #[arg(long, value_parser = positive_usize, default_value = "100000")]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub transient: usize,
    /// IET of the cylinder plot.
    #[arg(long, requires = "perm")]
    pub lengths: Option<String>,
    #[arg(long, requires = "lengths")]
    pub perm: Option<String>,
    /// Cylinder rotation angles; resonant angles when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}
