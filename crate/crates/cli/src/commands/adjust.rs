use std::path::PathBuf;

use clap::{Args, ValueEnum};
use geotopo::angle::{Angle, AngleUnit};
use geotopo::lsq::{
    adjust_directions, adjust_directions_parametric, adjust_leveling, adjust_triangle, DirectionSet, LevelingObservation,
    NormalizedUnits, TriangleObservations,
};

use crate::output::{Cell, Report, Table};
use crate::{field, parse_num, read_rows, CliError, Ctx};

#[derive(Debug, Args)]
pub struct AdjustLevelArgs {
    /// CSV `from,to,dh[,dist]`: `dh = H_to − H_from` in metres, distance in km; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Fixed height `NODE=H`; repeatable.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub fixed: Vec<String>,
    /// A-priori leveling precision, mm per √km.
    #[arg(long)]
    pub precision: Option<f64>,
    /// Height difference `A-B` to report with its standard deviation; repeatable.
    #[arg(long)]
    pub diff: Vec<String>,
}

#[derive(Debug, Args)]
pub struct AdjustTriangleArgs {
    /// CSV `element,value,sigma` with elements a, b, c (metres) and A, B, C (angles); `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Normalized length unit, metres.
    #[arg(long, default_value_t = 1e-3)]
    pub length_unit: f64,
    /// Normalized angle unit.
    #[arg(long, default_value = "1dmgr")]
    pub angle_unit: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionMethod {
    Condition,
    Parametric,
}

#[derive(Debug, Args)]
pub struct AdjustDirectionsArgs {
    /// CSV `station,target,direction`; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Standard deviation of one direction.
    #[arg(long)]
    pub sigma: String,
    #[arg(long, value_enum, default_value = "condition")]
    pub method: DirectionMethod,
    /// Angle `STATION:FROM:TO` to report with its weight; repeatable.
    #[arg(long)]
    pub angle: Vec<String>,
}

pub fn run_level(_ctx: &Ctx, a: &AdjustLevelArgs) -> Result<Report, CliError> {
    let mut obs = Vec::new();
    for r in read_rows(&a.input, "from")? {
        let dist = match r.get(3).filter(|s| !s.is_empty()) {
            Some(d) => Some(parse_num(d, "dist")?),
            None => None,
        };
        obs.push(LevelingObservation::new(field(&r, 0, "from")?, field(&r, 1, "to")?, parse_num(field(&r, 2, "dh")?, "dh")?, dist));
    }
    let fixed: Vec<(String, f64)> = a
        .fixed
        .iter()
        .map(|f| {
            let (n, h) = f.split_once('=').ok_or_else(|| CliError::usage(format!("--fixed expects NODE=H, got `{f}`")))?;
            Ok((n.trim().to_string(), parse_num(h, "fixed height")?))
        })
        .collect::<Result<_, CliError>>()?;
    let fixed_ref: Vec<(&str, f64)> = fixed.iter().map(|(n, h)| (n.as_str(), *h)).collect();
    let res = adjust_leveling(&obs, &fixed_ref, a.precision)?;
    let opt = |v: Option<f64>| v.map_or(Cell::Empty, |x| Cell::Num(x, 6));

    let mut heights = Table::new("heights", &["node", "h_m", "sigma_m", "sigma_prior_m"]);
    for (node, h) in &res.heights {
        heights.push(vec![Cell::text(node), Cell::Num(*h, 6), Cell::Num(res.sigma(node)?, 6), opt(res.sigma_prior(node)?)]);
    }
    let mut report = Report::single(heights);
    if !a.diff.is_empty() {
        let mut t = Table::new("differences", &["pair", "dh_m", "sigma_m", "sigma_prior_m"]);
        for d in &a.diff {
            let (from, to) = d.split_once('-').ok_or_else(|| CliError::usage(format!("--diff expects A-B, got `{d}`")))?;
            let h = |n: &str| res.height(n).ok_or_else(|| CliError::usage(format!("unknown node `{n}`")));
            t.push(vec![
                Cell::text(d),
                Cell::Num(h(to)? - h(from)?, 6),
                Cell::Num(res.sigma_difference(from, to)?, 6),
                opt(res.sigma_difference_prior(from, to)?),
            ]);
        }
        report.push(t);
    }
    let mut s = Table::new("summary", &["s2", "precision_mm_per_km", "redundancy"]);
    s.push(vec![
        Cell::Sci(res.adjustment.s2, 9),
        Cell::Num(res.precision_estimate_mm_per_km(), 6),
        Cell::Int(res.adjustment.redundancy as i64),
    ]);
    report.push(s);
    Ok(report)
}

pub fn run_triangle(ctx: &Ctx, a: &AdjustTriangleArgs) -> Result<Report, CliError> {
    let mut obs = TriangleObservations::default();
    for r in read_rows(&a.input, "element")? {
        let el = field(&r, 0, "element")?;
        let (v, s) = (field(&r, 1, "value")?, field(&r, 2, "sigma")?);
        match el {
            "a" | "b" | "c" => {
                let i = (el.as_bytes()[0] - b'a') as usize;
                obs.sides[i] = Some((parse_num(v, "side")?, parse_num(s, "sigma")?));
            }
            "A" | "B" | "C" => {
                let i = (el.as_bytes()[0] - b'A') as usize;
                obs.angles[i] = Some((ctx.angle(v)?, ctx.angle(s)?));
            }
            other => return Err(CliError::usage(format!("unknown triangle element `{other}`"))),
        }
    }
    let units = NormalizedUnits::new(a.length_unit, ctx.angle(&a.angle_unit)?);
    let adj = adjust_triangle(&obs, &units)?;
    let mut t = Table::new("triangle", &["element", "adjusted", "sigma", "weight", "unit"]);
    for i in 0..3 {
        t.push(vec![
            Cell::text(["a", "b", "c"][i]),
            Cell::Num(adj.sides[i], 6),
            Cell::Num(adj.side_sigmas[i], 6),
            Cell::Num(adj.side_weights[i], 9),
            Cell::text("m"),
        ]);
    }
    for i in 0..3 {
        t.push(vec![
            Cell::text(["A", "B", "C"][i]),
            ctx.angle_cell(adj.angles[i]),
            ctx.angle_cell(adj.angle_sigmas[i]),
            Cell::Num(adj.angle_weights[i], 9),
            ctx.unit_cell(),
        ]);
    }
    let mut s = Table::new("summary", &["s2", "iterations"]);
    s.push(vec![Cell::Num(adj.s2, 9), Cell::Int(adj.iterations as i64)]);
    Ok(Report { tables: vec![t, s] })
}

pub fn run_directions(ctx: &Ctx, a: &AdjustDirectionsArgs) -> Result<Report, CliError> {
    let mut sets: Vec<(String, Vec<(String, Angle<f64>)>)> = Vec::new();
    for r in read_rows(&a.input, "station")? {
        let (st, tg) = (field(&r, 0, "station")?, field(&r, 1, "target")?);
        let d = ctx.angle(field(&r, 2, "direction")?)?;
        match sets.iter_mut().find(|(s, _)| s == st) {
            Some((_, v)) => v.push((tg.to_string(), d)),
            None => sets.push((st.to_string(), vec![(tg.to_string(), d)])),
        }
    }
    let sets: Vec<DirectionSet<f64>> =
        sets.iter().map(|(s, v)| DirectionSet::new(s.as_str(), v.iter().map(|(t, d)| (t.as_str(), *d)).collect())).collect();
    let sigma = ctx.angle(&a.sigma)?;
    let adj = match a.method {
        DirectionMethod::Condition => adjust_directions(&sets, sigma)?,
        DirectionMethod::Parametric => adjust_directions_parametric(&sets, sigma)?,
    };
    let mut t = Table::new("directions", &["station", "target", "observed", "adjusted", "weight", "unit"]);
    for (i, (st, tg)) in adj.lines.iter().enumerate() {
        t.push(vec![
            Cell::text(st),
            Cell::text(tg),
            ctx.angle_cell(adj.observed[i]),
            ctx.angle_cell(adj.adjusted[i]),
            Cell::Num(adj.direction_weight(st, tg)?, 9),
            ctx.unit_cell(),
        ]);
    }
    let mut report = Report::single(t);
    if !a.angle.is_empty() {
        let mut t = Table::new("angles", &["station", "from", "to", "angle", "weight", "unit"]);
        for spec in &a.angle {
            let parts: Vec<&str> = spec.split(':').collect();
            let [st, from, to] = parts[..] else {
                return Err(CliError::usage(format!("--angle expects STATION:FROM:TO, got `{spec}`")));
            };
            t.push(vec![
                Cell::text(st),
                Cell::text(from),
                Cell::text(to),
                ctx.angle_cell(adj.angle(st, from, to)?),
                Cell::Num(adj.angle_weight(st, from, to)?, 9),
                ctx.unit_cell(),
            ]);
        }
        report.push(t);
    }
    let dmgr = AngleUnit::Dmgr.radians_per_unit::<f64>();
    let mut s = Table::new("summary", &["s2_dmgr2", "s2_ratio", "redundancy"]);
    s.push(vec![Cell::Num(adj.s2 / (dmgr * dmgr), 6), Cell::Num(adj.s2_ratio, 9), Cell::Int(adj.redundancy as i64)]);
    report.push(s);
    Ok(report)
}
