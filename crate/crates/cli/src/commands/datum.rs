use std::path::{Path, PathBuf};

use clap::Args;
use geotopo::lsq::{bursa_wolf_apply, bursa_wolf_fit, residual_rms, SevenParams};
use geotopo::vec3::Vec3;
use geotopo::Vec3d;

use crate::output::{Cell, Report, Table};
use crate::{field, parse_num, read_rows, CliError, Ctx};

const MICRO: f64 = 1e-6;

#[derive(Debug, Args)]
pub struct FitDatumArgs {
    /// CSV `name,x1,y1,z1,x2,y2,z2` of common points; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Also print per-point residuals.
    #[arg(long)]
    pub residuals: bool,
}

#[derive(Debug, Args)]
pub struct ApplyDatumArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub tx: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub ty: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub tz: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub scale_ppm: f64,
    /// Rotations in microradians.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub rx_urad: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub ry_urad: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub rz_urad: f64,
    /// Fit the parameters on this common-point CSV instead of giving them.
    #[arg(long, value_name = "FILE")]
    pub common: Option<PathBuf>,
    /// CSV `name,x,y,z` to transform; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// `x y z` of a single point.
    #[arg(allow_negative_numbers = true)]
    pub values: Vec<String>,
}

fn xyz(r: &[String], at: usize) -> Result<Vec3d, CliError> {
    let c = |i: usize, what: &str| -> Result<f64, CliError> { parse_num(field(r, at + i, what)?, what) };
    Ok(Vec3::new(c(0, "x")?, c(1, "y")?, c(2, "z")?))
}

fn common_points(path: &Path) -> Result<(Vec<String>, Vec<(Vec3d, Vec3d)>), CliError> {
    let rows = read_rows(path, "name")?;
    let names = rows.iter().map(|r| r[0].clone()).collect();
    let pts = rows.iter().map(|r| Ok((xyz(r, 1)?, xyz(r, 4)?))).collect::<Result<_, CliError>>()?;
    Ok((names, pts))
}

pub fn run_fit(_ctx: &Ctx, a: &FitDatumArgs) -> Result<Report, CliError> {
    let (names, pts) = common_points(&a.input)?;
    let (p, adj) = bursa_wolf_fit(&pts)?;
    let sigma = adj.sigma();
    let mut t = Table::new("parameters", &["parameter", "value", "sigma"]);
    let values = [p.tx, p.ty, p.tz, p.scale_ppm, p.rx / MICRO, p.ry / MICRO, p.rz / MICRO];
    let keys = ["tx_m", "ty_m", "tz_m", "scale_ppm", "rx_urad", "ry_urad", "rz_urad"];
    for (i, (name, v)) in keys.iter().zip(values).enumerate() {
        let s = if i >= 4 { sigma[i] / MICRO } else { sigma[i] };
        t.push(vec![Cell::text(*name), Cell::Num(v, 6), Cell::Num(s, 6)]);
    }
    t.push(vec![Cell::text("rms_m"), Cell::Num(residual_rms(&p, &pts), 6), Cell::Empty]);
    t.push(vec![Cell::text("s0_m"), Cell::Num(adj.s2.sqrt(), 6), Cell::Empty]);
    let mut report = Report::single(t);
    if a.residuals {
        let mut t = Table::new("residuals", &["name", "vx_m", "vy_m", "vz_m"]);
        for (name, (c1, c2)) in names.iter().zip(&pts) {
            let d = bursa_wolf_apply(&p, *c1) - *c2;
            t.push(vec![Cell::text(name), Cell::Num(d.x, 4), Cell::Num(d.y, 4), Cell::Num(d.z, 4)]);
        }
        report.push(t);
    }
    Ok(report)
}

pub fn run_apply(_ctx: &Ctx, a: &ApplyDatumArgs) -> Result<Report, CliError> {
    let p = match &a.common {
        Some(path) => bursa_wolf_fit(&common_points(path)?.1)?.0,
        None => SevenParams::new(
            [a.tx, a.ty, a.tz],
            a.scale_ppm,
            [a.rx_urad * MICRO, a.ry_urad * MICRO, a.rz_urad * MICRO],
        )?,
    };
    let rows = match (&a.input, a.values.len()) {
        (Some(path), 0) => read_rows(path, "name")?,
        (None, 3) => vec![std::iter::once("point".to_string()).chain(a.values.iter().cloned()).collect()],
        _ => return Err(CliError::usage("give x y z or --input FILE")),
    };
    let mut t = Table::new("transformed", &["name", "x", "y", "z"]);
    for r in &rows {
        let c = bursa_wolf_apply(&p, xyz(r, 1)?);
        t.push(vec![Cell::text(&r[0]), Cell::Num(c.x, 4), Cell::Num(c.y, 4), Cell::Num(c.z, 4)]);
    }
    Ok(Report::single(t))
}
