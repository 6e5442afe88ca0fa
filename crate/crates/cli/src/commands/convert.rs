use std::path::PathBuf;

use clap::{Args, ValueEnum};
use geotopo::angle::AngleUnit;
use geotopo::cartgeo::{
    cart_to_geodetic_finite, cart_to_geodetic_iter, cart_to_geodetic_series, geodetic_to_cart, GeodeticCoord, IterMethod,
};
use geotopo::vec3::Vec3;

use crate::output::{Cell, Report, Table};
use crate::{field, parse_angle, parse_num, read_rows, CliError, Ctx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Geodetic,
    Cartesian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Iter1,
    Iter2,
    Iter3,
    Finite,
    Series,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long, default_value = "grs")]
    pub ell: String,
    #[arg(long, value_enum)]
    pub to: Target,
    /// Cartesian → geodetic algorithm.
    #[arg(long, value_enum, default_value = "iter3")]
    pub method: Method,
    /// Latitude tolerance of the iterative methods, radians.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Order of the series method.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// CSV with `name,X,Y,Z` or `name,phi,lambda,h[,unit]`; `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// `X Y Z` or `phi lambda h` for a single point.
    #[arg(allow_negative_numbers = true)]
    pub values: Vec<String>,
}

fn rows(a: &ConvertArgs, header: &str) -> Result<Vec<Vec<String>>, CliError> {
    match (&a.input, a.values.len()) {
        (Some(p), 0) => read_rows(p, header),
        (None, 3) => Ok(vec![std::iter::once("point".to_string()).chain(a.values.iter().cloned()).collect()]),
        _ => Err(CliError::usage("give three coordinates or --input FILE")),
    }
}

pub fn run(ctx: &Ctx, a: &ConvertArgs) -> Result<Report, CliError> {
    let ell = ctx.ellipsoid(&a.ell)?;
    match a.to {
        Target::Geodetic => {
            let mut t = Table::new("geodetic", &["name", "phi", "lambda", "h", "unit"]);
            for r in rows(a, "name")? {
                let name = field(&r, 0, "name")?;
                let p = Vec3::new(
                    parse_num(field(&r, 1, "X")?, "X")?,
                    parse_num(field(&r, 2, "Y")?, "Y")?,
                    parse_num(field(&r, 3, "Z")?, "Z")?,
                );
                let g = match a.method {
                    Method::Iter1 | Method::Iter2 | Method::Iter3 => {
                        let m = match a.method {
                            Method::Iter1 => IterMethod::Iter1,
                            Method::Iter2 => IterMethod::Iter2,
                            _ => IterMethod::Iter3,
                        };
                        let (g, rep) = cart_to_geodetic_iter(&ell, p, m, a.eps)?;
                        log::debug!("{name}: {} iterations (bound {:?})", rep.iterations, rep.bound_used);
                        g
                    }
                    Method::Finite => cart_to_geodetic_finite(&ell, p)?,
                    Method::Series => cart_to_geodetic_series(&ell, p, a.order)?,
                };
                t.push(vec![
                    Cell::text(name),
                    ctx.angle_cell(g.phi),
                    ctx.angle_cell(g.lambda),
                    Cell::Num(g.h, 4),
                    ctx.unit_cell(),
                ]);
            }
            Ok(Report::single(t))
        }
        Target::Cartesian => {
            let mut t = Table::new("cartesian", &["name", "X", "Y", "Z"]);
            for r in rows(a, "name")? {
                let name = field(&r, 0, "name")?;
                let unit = match r.get(4).filter(|s| !s.is_empty()) {
                    Some(u) => u.parse::<AngleUnit>().map_err(|e| CliError::usage(e.to_string()))?,
                    None => ctx.unit,
                };
                let g = GeodeticCoord::new(
                    parse_angle(field(&r, 1, "phi")?, unit)?,
                    parse_angle(field(&r, 2, "lambda")?, unit)?,
                    parse_num(field(&r, 3, "h")?, "h")?,
                );
                let p = geodetic_to_cart(&ell, &g)?;
                t.push(vec![Cell::text(name), Cell::Num(p.x, 4), Cell::Num(p.y, 4), Cell::Num(p.z, 4)]);
            }
            Ok(Report::single(t))
        }
    }
}
