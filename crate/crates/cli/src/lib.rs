//! Command-line front end for `geotopo`: coordinate conversion, projections, distance reduction,
//! astronomy, curvature, orbits, adjustments and the worked-exercise fixture suite.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use geotopo::angle::{Angle, AngleUnit};
use geotopo::geocore::{load_ellipsoids, Ellipsoid};
use geotopo::projmaps::{builtin_zones, load_zones};
use geotopo::{Ellipsoid64, GeoError, LambertZone64};
use thiserror::Error;

mod commands;
pub mod fixtures;
pub mod output;

use output::Cell;

/// Environment variable naming a directory with `ellipsoids.toml` and `lambert_zones.toml`.
pub const CONFIG_DIR_ENV: &str = "GEOTOPO_CONFIG_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{failed} of {total} fixture checks failed")]
    FixturesFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Gr,
    Deg,
    Rad,
    Dmgr,
}

impl From<UnitArg> for AngleUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Gr => AngleUnit::Gr,
            UnitArg::Deg => AngleUnit::Deg,
            UnitArg::Rad => AngleUnit::Rad,
            UnitArg::Dmgr => AngleUnit::Dmgr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "geotopo", version, about = "Geodesy, projections, astronomy and adjustment computations")]
pub struct Cli {
    /// Angle unit for input without a suffix and for output.
    #[arg(long, value_enum, default_value = "gr", global = true)]
    pub unit: UnitArg,
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Ellipsoid registry (TOML) searched before the built-in presets.
    #[arg(long, global = true, value_name = "FILE")]
    pub ellipsoids: Option<PathBuf>,
    /// Lambert zone registry (TOML) replacing the built-in zones.
    #[arg(long, global = true, value_name = "FILE")]
    pub zones: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartesian ↔ geodetic coordinates.
    Convert(commands::convert::ConvertArgs),
    /// Meridian arc length and its inverse.
    Arc(commands::arc::ArcArgs),
    /// Map projections: Lambert, UTM, Mercator, Gauss sphere.
    Project(commands::project::ProjectArgs),
    /// Slope distance to ellipsoid and grid distances.
    Reduce(commands::reduce::ReduceArgs),
    /// Hour angles, horizontal coordinates, sidereal time, rising and setting.
    Astro(commands::astro::AstroArgs),
    /// Curvature of catalog curves and surfaces.
    Curvature(commands::curvature::CurvatureArgs),
    /// Keplerian orbits.
    Orbit(commands::orbit::OrbitArgs),
    /// Fit Burša-Wolf parameters on common points.
    FitDatum(commands::datum::FitDatumArgs),
    /// Apply Burša-Wolf parameters to points.
    ApplyDatum(commands::datum::ApplyDatumArgs),
    /// Leveling network adjustment.
    AdjustLevel(commands::adjust::AdjustLevelArgs),
    /// Plane triangle adjustment from sides and angles.
    AdjustTriangle(commands::adjust::AdjustTriangleArgs),
    /// Direction set adjustment on a network of stations.
    AdjustDirections(commands::adjust::AdjustDirectionsArgs),
    /// Worked-exercise fixtures against the golden file.
    Fixtures(commands::fixtures::FixturesArgs),
}

/// Shared state for one invocation.
pub struct Ctx {
    pub unit: AngleUnit,
    pub json: bool,
    ellipsoids: Vec<(String, Ellipsoid64)>,
    zones: Vec<LambertZone64>,
}

impl Ctx {
    fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let env_dir = std::env::var_os(CONFIG_DIR_ENV).map(PathBuf::from);
        let pick = |flag: &Option<PathBuf>, file: &str| -> Option<PathBuf> {
            flag.clone().or_else(|| env_dir.as_ref().map(|d| d.join(file)).filter(|p| p.is_file()))
        };
        let ellipsoids = match pick(&cli.ellipsoids, "ellipsoids.toml") {
            Some(p) => load_ellipsoids(&read_text(&p)?)?,
            None => Vec::new(),
        };
        let zones = match pick(&cli.zones, "lambert_zones.toml") {
            Some(p) => load_zones(&read_text(&p)?)?,
            None => builtin_zones(),
        };
        Ok(Ctx { unit: cli.unit.into(), json: cli.json, ellipsoids, zones })
    }

    /// Registry entry by name, then the built-in presets.
    pub fn ellipsoid(&self, name: &str) -> Result<Ellipsoid64, CliError> {
        if let Some((_, e)) = self.ellipsoids.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)) {
            return Ok(*e);
        }
        Ok(Ellipsoid::by_name(name)?)
    }

    pub fn zones(&self) -> &[LambertZone64] {
        &self.zones
    }

    pub fn angle(&self, s: &str) -> Result<Angle<f64>, CliError> {
        parse_angle(s, self.unit)
    }

    pub fn angle_cell(&self, a: Angle<f64>) -> Cell {
        Cell::Num(a.to_unit(self.unit), angle_decimals(self.unit))
    }

    pub fn unit_cell(&self) -> Cell {
        Cell::text(self.unit.suffix())
    }
}

/// Digits that resolve about 1e-11 rad.
pub fn angle_decimals(unit: AngleUnit) -> usize {
    match unit {
        AngleUnit::Rad => 11,
        AngleUnit::Deg | AngleUnit::Gr => 9,
        AngleUnit::Dmgr => 5,
        AngleUnit::Hours => 10,
    }
}

pub fn parse_angle(s: &str, unit: AngleUnit) -> Result<Angle<f64>, CliError> {
    Angle::parse(s, unit).map_err(|e| CliError::usage(format!("{e}")))
}

pub fn parse_num(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::usage(format!("{what}: `{s}` is not a number")))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

/// Rows of a CSV file (or stdin for `-`), skipping `#` comments and a header whose first field is
/// `header_first`.
pub fn read_rows(path: &Path, header_first: &str) -> Result<Vec<Vec<String>>, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        read_text(path)?
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row: Vec<String> = rec.iter().map(str::to_string).collect();
        if row.iter().all(String::is_empty) {
            continue;
        }
        if i == 0 && row[0].eq_ignore_ascii_case(header_first) {
            continue;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Field `i` of a CSV row, or a usage error naming the line content.
pub fn field<'a>(row: &'a [String], i: usize, what: &str) -> Result<&'a str, CliError> {
    row.get(i)
        .map(String::as_str)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| CliError::usage(format!("missing {what} in row `{}`", row.join(","))))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = Ctx::from_cli(cli)?;
    let report = match &cli.command {
        Command::Convert(a) => commands::convert::run(&ctx, a)?,
        Command::Arc(a) => commands::arc::run(&ctx, a)?,
        Command::Project(a) => commands::project::run(&ctx, a)?,
        Command::Reduce(a) => commands::reduce::run(&ctx, a)?,
        Command::Astro(a) => commands::astro::run(&ctx, a)?,
        Command::Curvature(a) => commands::curvature::run(&ctx, a)?,
        Command::Orbit(a) => commands::orbit::run(&ctx, a)?,
        Command::FitDatum(a) => commands::datum::run_fit(&ctx, a)?,
        Command::ApplyDatum(a) => commands::datum::run_apply(&ctx, a)?,
        Command::AdjustLevel(a) => commands::adjust::run_level(&ctx, a)?,
        Command::AdjustTriangle(a) => commands::adjust::run_triangle(&ctx, a)?,
        Command::AdjustDirections(a) => commands::adjust::run_directions(&ctx, a)?,
        Command::Fixtures(a) => return commands::fixtures::run(&ctx, a, out),
    };
    if ctx.json {
        report.write_json(out)
    } else {
        report.write_csv(out)
    }
}

/// Parses `args` (program name first), runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
