use std::path::PathBuf;

use clap::{Args, ValueEnum};
use geotopo::angle::Angle;
use geotopo::projmaps::{
    find_zone, gauss_sphere_fit, gauss_sphere_map, gauss_sphere_modulus, mercator, mercator_inverse, mercator_modulus,
    meridian_convergence, utm_inverse_on_parallel, utm_truncated, zone_for, PlaneCoord,
};
use geotopo::reduce::DEFAULT_EARTH_RADIUS;
use geotopo::LambertZone64;

use crate::output::{Cell, Report, Table};
use crate::{field, parse_num, read_rows, CliError, Ctx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Projection {
    Lambert,
    Utm,
    Mercator,
    Gauss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Fwd,
    Inv,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long, value_enum)]
    pub proj: Projection,
    #[arg(long, value_enum, default_value = "fwd")]
    pub dir: Direction,
    /// Lambert zone name, or `auto` to pick it from the latitude.
    #[arg(long, default_value = "auto")]
    pub zone: String,
    /// Ellipsoid for UTM and the Gauss sphere.
    #[arg(long, default_value = "clarke1880")]
    pub ell: String,
    /// UTM central meridian.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: Option<String>,
    /// Gauss sphere origin latitude.
    #[arg(long, allow_hyphen_values = true)]
    pub phi0: Option<String>,
    /// Parallel on which the UTM inverse is taken.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Sphere radius for Mercator, metres.
    #[arg(long, default_value_t = DEFAULT_EARTH_RADIUS)]
    pub radius: f64,
    /// CSV `name,phi,lambda` (forward) or `name,x,y` (inverse); `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// `phi lambda` (forward) or `x y` (inverse).
    #[arg(allow_negative_numbers = true)]
    pub values: Vec<String>,
}

fn rows(a: &ProjectArgs) -> Result<Vec<Vec<String>>, CliError> {
    match (&a.input, a.values.len()) {
        (Some(p), 0) => read_rows(p, "name"),
        (None, 2) => Ok(vec![std::iter::once("point".to_string()).chain(a.values.iter().cloned()).collect()]),
        _ => Err(CliError::usage("give two values or --input FILE")),
    }
}

fn required(ctx: &Ctx, v: &Option<String>, flag: &str) -> Result<Angle<f64>, CliError> {
    ctx.angle(v.as_deref().ok_or_else(|| CliError::usage(format!("--{flag} is required")))?)
}

fn lambert_zone<'a>(ctx: &'a Ctx, name: &str, phi: Option<Angle<f64>>) -> Result<&'a LambertZone64, CliError> {
    if name.eq_ignore_ascii_case("auto") {
        let phi = phi.ok_or_else(|| CliError::usage("the inverse needs an explicit --zone"))?;
        return zone_for(ctx.zones(), phi)
            .ok_or_else(|| CliError::usage(format!("no zone covers latitude {}", phi.format_unit(ctx.unit))));
    }
    let z = find_zone(ctx.zones(), name)?;
    if let Some(phi) = phi {
        if z.band.is_some() && !z.in_band(phi) {
            log::warn!("latitude {} is outside the band of zone {}", phi.format_unit(ctx.unit), z.name);
        }
    }
    Ok(z)
}

pub fn run(ctx: &Ctx, a: &ProjectArgs) -> Result<Report, CliError> {
    let rows = rows(a)?;
    match a.dir {
        Direction::Fwd if a.proj == Projection::Gauss => {
            let ell = ctx.ellipsoid(&a.ell)?;
            let params = gauss_sphere_fit(&ell, required(ctx, &a.phi0, "phi0")?)?;
            let mut t = Table::new("gauss_sphere", &["name", "psi", "lambda", "modulus", "radius_m", "unit"]);
            for r in &rows {
                let phi = ctx.angle(field(r, 1, "phi")?)?;
                let lambda = ctx.angle(field(r, 2, "lambda")?)?;
                let (psi, lam) = gauss_sphere_map(&params, &ell, phi, lambda)?;
                t.push(vec![
                    Cell::text(&r[0]),
                    ctx.angle_cell(psi),
                    ctx.angle_cell(lam),
                    Cell::Num(gauss_sphere_modulus(&params, &ell, phi)?, 12),
                    Cell::Num(params.r_sphere, 4),
                    ctx.unit_cell(),
                ]);
            }
            Ok(Report::single(t))
        }
        Direction::Fwd => {
            let mut t = Table::new("plane", &["name", "x", "y", "convergence", "modulus", "zone", "unit"]);
            for r in &rows {
                let phi = ctx.angle(field(r, 1, "phi")?)?;
                let lambda = ctx.angle(field(r, 2, "lambda")?)?;
                let (p, gamma, m, zone) = match a.proj {
                    Projection::Lambert => {
                        let z = lambert_zone(ctx, &a.zone, Some(phi))?;
                        let p = z.forward(phi, lambda)?;
                        (p, Some(z.convergence(lambda)), Some(z.modulus(phi)?), z.name.clone())
                    }
                    Projection::Utm => {
                        let ell = ctx.ellipsoid(&a.ell)?;
                        let lambda0 = required(ctx, &a.lambda0, "lambda0")?;
                        let gamma = meridian_convergence(lambda, lambda0, phi);
                        (utm_truncated(&ell, lambda0, phi, lambda), Some(gamma), None, String::new())
                    }
                    Projection::Mercator => {
                        (mercator(a.radius, phi, lambda)?, Some(Angle::default()), Some(mercator_modulus(phi)), String::new())
                    }
                    Projection::Gauss => unreachable!("handled above"),
                };
                t.push(vec![
                    Cell::text(&r[0]),
                    Cell::Num(p.x, 4),
                    Cell::Num(p.y, 4),
                    gamma.map_or(Cell::Empty, |g| ctx.angle_cell(g)),
                    m.map_or(Cell::Empty, |m| Cell::Num(m, 12)),
                    Cell::Text(zone),
                    ctx.unit_cell(),
                ]);
            }
            Ok(Report::single(t))
        }
        Direction::Inv => {
            let mut t = Table::new("geographic", &["name", "phi", "lambda", "zone", "unit"]);
            for r in &rows {
                let x = parse_num(field(r, 1, "x")?, "x")?;
                let y = parse_num(field(r, 2, "y")?, "y")?;
                let (phi, lambda, zone) = match a.proj {
                    Projection::Lambert => {
                        let z = lambert_zone(ctx, &a.zone, None)?;
                        let (phi, lambda) = z.inverse(PlaneCoord::new(x, y))?;
                        (phi, lambda, z.name.clone())
                    }
                    Projection::Utm => {
                        // Only the easting is inverted, along the given parallel.
                        let ell = ctx.ellipsoid(&a.ell)?;
                        let phi = required(ctx, &a.phi, "phi")?;
                        (phi, utm_inverse_on_parallel(&ell, required(ctx, &a.lambda0, "lambda0")?, phi, x)?, String::new())
                    }
                    Projection::Mercator => {
                        let (phi, lambda) = mercator_inverse(a.radius, PlaneCoord::new(x, y));
                        (phi, lambda, String::new())
                    }
                    Projection::Gauss => return Err(CliError::usage("the Gauss sphere map has no inverse here")),
                };
                t.push(vec![Cell::text(&r[0]), ctx.angle_cell(phi), ctx.angle_cell(lambda), Cell::Text(zone), ctx.unit_cell()]);
            }
            Ok(Report::single(t))
        }
    }
}
