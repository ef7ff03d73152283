//! Command-line front end.
//!
//! Exit status: 0 on success, 2 for usage errors, 3 for guard violations,
//! 4 for precision failures, 1 for anything else. Failures print a single
//! line `error: <kind>: <message>` on stderr.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand::RngExt;

use crate::analysis::{equidist_report, obtuse_curve};
use crate::diophantine::approximate_shape;
use crate::enumeration::enumerate_weighted;
use crate::export::{self, Format};
use crate::lattice::{LatticePoint, LatticeTriangle};
use crate::moduli::{all_permutations, s3_orbit, PlanePoint, ShapeTriple};
use crate::randgeom::{self, HistogramMode};
use crate::{svg, Error};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;
pub const EXIT_OTHER: i32 = 1;

/// Largest half-width accepted when sampling random lattice triangles.
pub const MAX_SAMPLE_N: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Weighted similarity-class census of [-n, n]^2.
    Enumerate,
    /// Obtuse fractions for n = 2..=n-max.
    Curve,
    /// Empirical obtuse ratio against the uniform and unit-square values.
    Report,
    /// Lattice triangle approximating the shape with sides a, b, c.
    Approx,
    /// Monte Carlo obtuse probability in the unit square.
    McObtuse,
    /// Monte Carlo mean distance between two points of the unit square.
    McDistance,
    /// Histogram of normalized shapes of random unit-square triangles.
    Hist,
    /// SVG of labeled shape-space points of lattice triangles in [-n, n]^2.
    PlotShapes,
    /// SVG of the obtuse-fraction curve for n = 2..=n-max.
    PlotCurve,
}

#[derive(Debug, Parser)]
#[command(name = "trimoduli", version, about = "Lattice triangles in the moduli space of triangles")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Half-width of the square [-n, n]^2.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    /// Output file; standard output when omitted.
    #[arg(long = "out")]
    pub out_path: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Histogram only the sorted representative of each shape.
    #[arg(long)]
    pub sorted: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    /// The single stderr line for this failure.
    pub fn line(&self) -> String {
        format!("error: {}: {}", self.kind, self.message.replace('\n', " "))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidInput(_)
            | Error::Config(_)
            | Error::Degenerate(_)
            | Error::CoordinateOutOfRange(_) => EXIT_USAGE,
            Error::Guard(_) => EXIT_GUARD,
            Error::Precision(_) => EXIT_PRECISION,
            Error::EmptySet | Error::Invariant(_) | Error::Parse(_) | Error::Io { .. } => {
                EXIT_OTHER
            }
        };
        Self {
            code,
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str, cmd: Command) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::usage(format!(
            "--{flag} is required for {}",
            cmd.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
        ))
    })
}

impl RunConfig {
    fn default_format(&self) -> Format {
        match self.command {
            Command::Enumerate | Command::Curve | Command::Hist => Format::Csv,
            Command::Report | Command::Approx | Command::McObtuse | Command::McDistance => {
                Format::Json
            }
            Command::PlotShapes | Command::PlotCurve => Format::Svg,
        }
    }

    pub fn output_format(&self) -> Format {
        self.format.unwrap_or_else(|| self.default_format())
    }

    /// Checks that every flag the command needs is present and compatible.
    pub fn validate(&self) -> Result<(), CliError> {
        use Command::*;
        let cmd = self.command;
        match cmd {
            Enumerate | Report => {
                require(self.n, "n", cmd)?;
            }
            Curve | PlotCurve => {
                require(self.n_max, "n-max", cmd)?;
            }
            Approx => {
                require(self.a, "a", cmd)?;
                require(self.b, "b", cmd)?;
                require(self.c, "c", cmd)?;
                require(self.eps, "eps", cmd)?;
            }
            McObtuse | McDistance | Hist => {
                require(self.samples, "samples", cmd)?;
            }
            PlotShapes => {
                require(self.n, "n", cmd)?;
            }
        }
        let format = self.output_format();
        let svg_only = matches!(cmd, PlotShapes | PlotCurve);
        let svg_allowed = svg_only || cmd == Curve;
        if svg_only && format != Format::Svg {
            return Err(CliError::usage("plot commands only produce svg"));
        }
        if format == Format::Svg && !svg_allowed {
            return Err(CliError::usage("svg output is only available for curve and plot commands"));
        }
        if self.sorted && cmd != Hist {
            return Err(CliError::usage("--sorted only applies to hist"));
        }
        Ok(())
    }
}

/// Runs one command, writing to `--out` or to `stdout`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    config.validate()?;
    match &config.out_path {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = BufWriter::new(file);
            execute(config, &mut w)?;
            w.flush().map_err(|e| Error::io(path, e))?;
        }
        None => execute(config, stdout)?,
    }
    Ok(())
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let format = config.output_format();
    match config.command {
        Command::Enumerate => {
            let set = enumerate_weighted(config.n.unwrap_or_default())?;
            export::write_weighted_set(&set, format, out)?;
        }
        Command::Curve | Command::PlotCurve => {
            let curve = obtuse_curve(config.n_max.unwrap_or_default())?;
            export::write_curve(&curve, format, out)?;
        }
        Command::Report => {
            let report = equidist_report(config.n.unwrap_or_default())?;
            export::write_report(&report, format, out)?;
        }
        Command::Approx => {
            let (a, b, c) = (
                config.a.unwrap_or_default(),
                config.b.unwrap_or_default(),
                config.c.unwrap_or_default(),
            );
            let target = ShapeTriple::from_side_lengths(a, b, c)?;
            let found = approximate_shape(&target, config.eps.unwrap_or_default())?;
            export::write_approximation(&found, format, out)?;
        }
        Command::McObtuse => {
            let e = randgeom::obtuse_probability(config.samples.unwrap_or_default(), config.seed)?;
            export::write_estimate(&e, format, out)?;
        }
        Command::McDistance => {
            let e = randgeom::mean_pair_distance(config.samples.unwrap_or_default(), config.seed)?;
            export::write_estimate(&e, format, out)?;
        }
        Command::Hist => {
            let mode = if config.sorted {
                HistogramMode::Sorted
            } else {
                HistogramMode::Labeled
            };
            let h = randgeom::shape_histogram(
                config.samples.unwrap_or_default(),
                config.bins.unwrap_or(64),
                config.seed,
                mode,
            )?;
            export::write_histogram(&h, format, out)?;
        }
        Command::PlotShapes => {
            let n = config.n.unwrap_or_default();
            let points = match config.samples {
                Some(samples) => sampled_points(n, samples, config.seed)?,
                None => census_points(n)?,
            };
            let svg = svg::render_shapes(&points)?;
            out.write_all(svg.as_bytes())
                .map_err(|e| Error::io("<output>", e))?;
        }
    }
    Ok(())
}

/// Distinct labeled projections of every similarity class in `[-n, n]^2`.
fn census_points(n: u32) -> Result<Vec<PlanePoint>, Error> {
    if n > crate::analysis::MAX_ANALYSIS_N {
        return Err(Error::Guard(format!(
            "n = {n} exceeds {} for a full census plot",
            crate::analysis::MAX_ANALYSIS_N
        )));
    }
    let set = enumerate_weighted(n)?;
    Ok(set
        .keys()
        .flat_map(|k| s3_orbit(&k.shape()))
        .map(|t| t.to_plane())
        .collect())
}

/// All six labeled projections of `samples` uniformly random lattice
/// triangles in `[-n, n]^2`.
fn sampled_points(n: u32, samples: u64, seed: u64) -> Result<Vec<PlanePoint>, Error> {
    if n == 0 || n > MAX_SAMPLE_N {
        return Err(Error::Guard(format!("n = {n} must lie in 1..={MAX_SAMPLE_N}")));
    }
    if samples == 0 || samples > 10_000_000 {
        return Err(Error::Guard(format!("samples = {samples} must lie in 1..=10^7")));
    }
    let mut rng = randgeom::task_rng(seed, 0);
    let range = -(n as i32)..=(n as i32);
    let mut draw = || LatticePoint::new(rng.random_range(range.clone()), rng.random_range(range.clone()));
    let mut points = Vec::with_capacity(6 * samples as usize);
    let mut taken = 0;
    while taken < samples {
        let Ok(t) = LatticeTriangle::new(draw(), draw(), draw()) else {
            continue;
        };
        for [a, b, _] in all_permutations(&t.similarity_key().shape()) {
            points.push(PlanePoint { a, b });
        }
        taken += 1;
    }
    Ok(points)
}
