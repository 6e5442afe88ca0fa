use std::path::PathBuf;

use clap::Args;
use geotopo::reduce::{
    reduce_mean, reduce_with_site_angle, slope_from_grid, to_grid, DistanceObservation, GridScale, DEFAULT_EARTH_RADIUS,
};

use crate::output::{Cell, Report, Table};
use crate::{field, parse_num, read_rows, CliError, Ctx};

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Slope distance, metres.
    #[arg(long)]
    pub dp: Option<f64>,
    /// Ellipsoidal height of the instrument end, metres.
    #[arg(long, allow_hyphen_values = true)]
    pub ha: Option<f64>,
    /// Ellipsoidal height of the target end, metres.
    #[arg(long, allow_hyphen_values = true)]
    pub hb: Option<f64>,
    /// Site (elevation) angle measured at A.
    #[arg(long, allow_hyphen_values = true)]
    pub site_angle: Option<String>,
    #[arg(long, default_value_t = DEFAULT_EARTH_RADIUS)]
    pub radius: f64,
    /// Linear modulus of the projection along the line.
    #[arg(long, conflicts_with = "alteration")]
    pub module: Option<f64>,
    /// Linear alteration, cm/km.
    #[arg(long, allow_hyphen_values = true)]
    pub alteration: Option<f64>,
    /// Grid distance to turn back into a slope distance (needs --ha, --hb and a scale).
    #[arg(long, conflicts_with_all = ["dp", "input"])]
    pub grid: Option<f64>,
    /// CSV `name,dp,ha,hb[,i]`; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

fn scale(a: &ReduceArgs) -> Option<GridScale<f64>> {
    a.module.map(GridScale::Module).or(a.alteration.map(GridScale::AlterationCmPerKm))
}

pub fn run(ctx: &Ctx, a: &ReduceArgs) -> Result<Report, CliError> {
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::usage(format!("--{flag} is required")));
    if let Some(dr) = a.grid {
        let s = scale(a).ok_or_else(|| CliError::usage("--grid needs --module or --alteration"))?;
        let dp = slope_from_grid(dr, s, need(a.ha, "ha")?, need(a.hb, "hb")?, a.radius)?;
        let mut t = Table::new("slope", &["dr_m", "modulus", "dp_m"]);
        t.push(vec![Cell::Num(dr, 4), Cell::Num(s.modulus(), 9), Cell::Num(dp, 4)]);
        return Ok(Report::single(t));
    }
    let rows = match &a.input {
        Some(p) => read_rows(p, "name")?,
        None => {
            let mut r = vec![
                "line".to_string(),
                need(a.dp, "dp")?.to_string(),
                need(a.ha, "ha")?.to_string(),
                need(a.hb, "hb")?.to_string(),
            ];
            if let Some(i) = &a.site_angle {
                r.push(i.clone());
            }
            vec![r]
        }
    };
    let mut t = Table::new(
        "reduction",
        &["name", "d0_m", "de_m", "d0_corr_m", "de_corr_m", "de_mean_m", "d0_site_m", "dr_m"],
    );
    for r in &rows {
        let obs = DistanceObservation::with_radius(
            parse_num(field(r, 1, "dp")?, "dp")?,
            parse_num(field(r, 2, "ha")?, "ha")?,
            parse_num(field(r, 3, "hb")?, "hb")?,
            a.radius,
        )?;
        let site = match r.get(4).filter(|s| !s.is_empty()) {
            Some(i) => Some(reduce_with_site_angle(&obs.with_site_angle(ctx.angle(i)?))?.d0),
            None => None,
        };
        let m = reduce_mean(&obs)?;
        t.push(vec![
            Cell::text(&r[0]),
            Cell::Num(m.rigorous.d0, 4),
            Cell::Num(m.rigorous.de, 4),
            Cell::Num(m.corrections.d0, 4),
            Cell::Num(m.corrections.de, 4),
            Cell::Num(m.de_mean, 4),
            site.map_or(Cell::Empty, |d| Cell::Num(d, 4)),
            scale(a).map_or(Cell::Empty, |s| Cell::Num(to_grid(m.de_mean, s), 4)),
        ]);
    }
    Ok(Report::single(t))
}
